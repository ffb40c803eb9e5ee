#include "sparsesense/reports.hpp"

#include "sparsesense/io_util.hpp"

namespace sparsesense {

namespace {

std::string echo_header(const ConfigEcho& echo) {
  std::string out;
  for (const auto& [k, v] : echo) out += ',' + k;
  return out;
}

std::string echo_values(const ConfigEcho& echo) {
  std::string out;
  for (const auto& [k, v] : echo) out += ',' + v;
  return out;
}

std::string f9(double v) { return format_sig9(v); }

}  // namespace

ConfigEcho echo_train_config(const TrainConfig& c) {
  return {{"batch_size", std::to_string(c.batch_size)},
          {"lr", f9(c.lr)},
          {"lr_drop_factor", f9(c.lr_drop_factor)},
          {"lr_drop_epoch", std::to_string(c.lr_drop_epoch)},
          {"total_epochs", std::to_string(c.total_epochs)},
          {"weight_decay", f9(c.weight_decay)},
          {"alpha", f9(c.alpha)},
          {"epsilon", f9(c.epsilon)},
          {"seed", std::to_string(c.seed)},
          {"window_len", f9(c.window_len)},
          {"stride", f9(c.stride)}};
}

std::string eval_report_csv(const EvalReport& report, const ActivitySpace& activities,
                            const ConfigEcho& echo) {
  std::string out = "scope,precision,recall,f1,support,predicted,degenerate" + echo_header(echo) + "\n";
  const std::string tail = echo_values(echo) + "\n";
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& m = report.per_class[c];
    out += activities.name(c) + ',' + f9(m.precision) + ',' + f9(m.recall) + ',' + f9(m.f1) +
           ',' + std::to_string(m.support) + ',' + std::to_string(m.predicted) + ',' +
           (m.degenerate ? "1" : "0") + tail;
  }
  out += "macro," + f9(report.macro_precision) + ',' + f9(report.macro_recall) + ',' +
         f9(report.macro_f1) + ',' + std::to_string(report.total()) + ',' +
         std::to_string(report.total()) + ",0" + tail;
  return out;
}

std::string confusion_csv(const EvalReport& report, const ActivitySpace& activities) {
  std::string out = "true_label";
  for (std::size_t c = 0; c < report.classes(); ++c) out += ',' + activities.name(c);
  out += '\n';
  for (std::size_t t = 0; t < report.classes(); ++t) {
    out += activities.name(t);
    for (auto n : report.confusion[t]) out += ',' + std::to_string(n);
    out += '\n';
  }
  return out;
}

std::string cv_summary_csv(const CvSummary& summary, const ConfigEcho& echo) {
  std::string out = "fold,train_segments,validation_segments,precision,recall,f1,accuracy" +
                    echo_header(echo) + "\n";
  const std::string tail = echo_values(echo) + "\n";
  std::vector<double> acc;
  for (const auto& f : summary.folds) {
    out += std::to_string(f.fold) + ',' + std::to_string(f.train_segments) + ',' +
           std::to_string(f.validation_segments) + ',' + f9(f.report.macro_precision) + ',' +
           f9(f.report.macro_recall) + ',' + f9(f.report.macro_f1) + ',' +
           f9(f.report.accuracy) + tail;
    acc.push_back(f.report.accuracy);
  }
  const MeanStd a = mean_std(acc);
  out += "mean,,," + f9(summary.precision.mean) + ',' + f9(summary.recall.mean) + ',' +
         f9(summary.f1.mean) + ',' + f9(a.mean) + tail;
  out += "std,,," + f9(summary.precision.std) + ',' + f9(summary.recall.std) + ',' +
         f9(summary.f1.std) + ',' + f9(a.std) + tail;
  return out;
}

namespace {

std::string row_key(const SweepRow& r) {
  const std::string interp =
      r.model == SweepModel::baseline ? std::string(to_string(r.interp)) : std::string("none");
  return std::string(to_string(r.model)) + ',' + interp + ',' + f9(r.window_len) + ',' +
         f9(r.drop_rate);
}

}  // namespace

std::string sweep_metrics_csv(const SweepResult& result, const ConfigEcho& echo) {
  std::string seeds;
  for (std::size_t i = 0; i < result.seeds.size(); ++i) {
    if (i) seeds += ';';
    seeds += std::to_string(result.seeds[i]);
  }
  std::string out = "model,interp,window_len,drop_rate,seeds,precision,recall,f1,accuracy,segments" +
                    echo_header(echo) + "\n";
  for (const auto& r : result.rows) {
    out += row_key(r) + ',' + seeds + ',' + f9(r.report.macro_precision) + ',' +
           f9(r.report.macro_recall) + ',' + f9(r.report.macro_f1) + ',' +
           f9(r.report.accuracy) + ',' + std::to_string(r.report.total()) + echo_values(echo) +
           '\n';
  }
  return out;
}

std::string sweep_latency_csv(const SweepResult& result) {
  std::string out = "model,interp,window_len,drop_rate,latency_ms_per_segment\n";
  for (const auto& r : result.rows) out += row_key(r) + ',' + f9(r.latency_ms_per_segment) + '\n';
  return out;
}

std::string latency_csv(const LatencyReport& report) {
  std::string out = "pipeline,batch_size,repetitions,warmups,mean_ms,std_ms\n";
  const auto row = [&](const char* name, const TimingStats& t) {
    out += std::string(name) + ',' + std::to_string(report.batch_size) + ',' +
           std::to_string(report.repetitions) + ',' + std::to_string(report.warmups) + ',' +
           f9(t.mean_ms) + ',' + f9(t.std_ms) + '\n';
  };
  row("set_model", report.set_model);
  row("baseline_total", report.baseline_total);
  row("baseline_interp", report.baseline_interp);
  return out;
}

std::string loss_trace_csv(const std::vector<double>& trace, const TrainConfig& config) {
  std::string out = "epoch,lr,loss\n";
  for (std::size_t e = 0; e < trace.size(); ++e)
    out += std::to_string(e) + ',' + f9(learning_rate_at(config, e)) + ',' + f9(trace[e]) + '\n';
  return out;
}

}  // namespace sparsesense
