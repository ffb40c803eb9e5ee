#include "sparsesense/model_io.hpp"

#include <nlohmann/json.hpp>

#include "sparsesense/error.hpp"
#include "sparsesense/io_util.hpp"

namespace sparsesense {

using nlohmann::json;

namespace {

constexpr const char* kSetKind = "set_model";
constexpr const char* kBaselineKind = "dense_baseline";

json mlp_to_json(const Mlp& mlp) {
  json layers = json::array();
  for (const auto& l : mlp.layers()) {
    layers.push_back({
        {"in", l.in()},
        {"out", l.out()},
        {"activation", std::string(to_string(l.activation))},
        {"weights", std::vector<double>(l.weights.data().begin(), l.weights.data().end())},
        {"bias", l.bias},
    });
  }
  return layers;
}

Mlp mlp_from_json(const json& layers) {
  std::vector<DenseLayer> out;
  for (const auto& j : layers) {
    DenseLayer l;
    const auto in = j.at("in").get<std::size_t>();
    const auto n_out = j.at("out").get<std::size_t>();
    l.weights = Matrix(n_out, in, j.at("weights").get<std::vector<double>>());
    l.bias = j.at("bias").get<std::vector<double>>();
    l.activation = parse_activation(j.at("activation").get<std::string>());
    out.push_back(std::move(l));
  }
  return Mlp(std::move(out));
}

json norm_to_json(const std::optional<NormStats>& norm) {
  if (!norm) return nullptr;
  return {{"min", norm->min}, {"max", norm->max}};
}

std::optional<NormStats> norm_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  NormStats s{j.at("min").get<std::vector<double>>(), j.at("max").get<std::vector<double>>()};
  if (s.min.size() != s.max.size()) throw LoadError("normalizer min/max lengths differ");
  return s;
}

std::string seal(json doc) {
  doc.erase("digest");
  const std::string digest = "fnv1a64:" + fnv1a_hex(doc.dump());
  doc["digest"] = digest;
  return doc.dump(1) + "\n";
}

// Parses, checks version and digest, and confirms the model kind.
json open(std::string_view text, const char* kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw LoadError("model file must hold a JSON object");
  if (!doc.contains("format_version")) throw LoadError("model file lacks the 'format_version' field");
  if (!doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != kModelFormatVersion) {
    throw LoadError("unsupported model format_version " + doc["format_version"].dump());
  }
  if (!doc.contains("digest") || !doc["digest"].is_string()) {
    throw LoadError("model file lacks the 'digest' field");
  }
  const std::string stored = doc["digest"].get<std::string>();
  json body = doc;
  body.erase("digest");
  if (stored != "fnv1a64:" + fnv1a_hex(body.dump())) {
    throw LoadError("model file digest mismatch (file is corrupted or was edited)");
  }
  if (doc.value("kind", std::string{}) != kind) {
    throw LoadError(std::string("model file is not a ") + kind);
  }
  return doc;
}

template <typename F>
auto translate_errors(F&& build) {
  try {
    return build();
  } catch (const json::exception& e) {
    throw LoadError(std::string("malformed model file: ") + e.what());
  } catch (const LoadError&) {
    throw;
  } catch (const InputError& e) {
    throw LoadError(std::string("inconsistent model file: ") + e.what());
  }
}

}  // namespace

std::string set_model_to_json(const SetModel& model) {
  model.validate();
  const auto arch = model.architecture();
  json doc = {
      {"format_version", kModelFormatVersion},
      {"kind", kSetKind},
      {"activity_space", model.activities.names()},
      {"d", model.channels()},
      {"z", model.embedding_width()},
      {"phi_widths", arch.phi},
      {"rho_widths", model.rho.widths()},
      {"norm", norm_to_json(model.norm)},
      {"phi", mlp_to_json(model.phi)},
      {"rho", mlp_to_json(model.rho)},
  };
  return seal(std::move(doc));
}

SetModel set_model_from_json(std::string_view text) {
  const json doc = open(text, kSetKind);
  return translate_errors([&] {
    SetModel m;
    m.activities = ActivitySpace(doc.at("activity_space").get<std::vector<std::string>>());
    m.norm = norm_from_json(doc.at("norm"));
    m.phi = mlp_from_json(doc.at("phi"));
    m.rho = mlp_from_json(doc.at("rho"));
    m.validate();
    if (doc.at("d").get<std::size_t>() != m.channels() ||
        doc.at("z").get<std::size_t>() != m.embedding_width()) {
      throw LoadError("declared d/z do not match the stored layers");
    }
    return m;
  });
}

std::string baseline_to_json(const DenseBaselineModel& model) {
  model.validate();
  json doc = {
      {"format_version", kModelFormatVersion},
      {"kind", kBaselineKind},
      {"activity_space", model.activities.names()},
      {"d", model.channels},
      {"interp", std::string(to_string(model.kind))},
      {"target_rate", model.target_rate},
      {"window_len", model.window_len},
      {"grid_points", model.grid_points()},
      {"hidden_widths", model.hidden_widths()},
      {"norm", norm_to_json(model.norm)},
      {"mlp", mlp_to_json(model.mlp)},
  };
  return seal(std::move(doc));
}

DenseBaselineModel baseline_from_json(std::string_view text) {
  const json doc = open(text, kBaselineKind);
  return translate_errors([&] {
    DenseBaselineModel m;
    m.activities = ActivitySpace(doc.at("activity_space").get<std::vector<std::string>>());
    m.channels = doc.at("d").get<std::size_t>();
    m.kind = parse_interp_kind(doc.at("interp").get<std::string>());
    m.target_rate = doc.at("target_rate").get<double>();
    m.window_len = doc.at("window_len").get<double>();
    m.norm = norm_from_json(doc.at("norm"));
    m.mlp = mlp_from_json(doc.at("mlp"));
    m.validate();
    return m;
  });
}

void save_model(const SetModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, set_model_to_json(model));
}

void save_model(const DenseBaselineModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, baseline_to_json(model));
}

SetModel load_model(const std::filesystem::path& path) {
  return set_model_from_json(read_text_file(path));
}

DenseBaselineModel load_baseline(const std::filesystem::path& path) {
  return baseline_from_json(read_text_file(path));
}

}  // namespace sparsesense
