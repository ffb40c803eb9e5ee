#include <gtest/gtest.h>

#include <sstream>

#include "generators.hpp"
#include "sparsesense/exports.hpp"

using namespace sparsesense;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST(Embeddings, OneRowPerSegmentMatchingPooledEmbedding) {
  sstest::Gen gen(1);
  const auto model = sstest::random_set_model(gen, 3, 3, {8, 6}, {5});
  std::vector<SparseSegment> segs;
  for (int i = 0; i < 25; ++i)
    segs.push_back(sstest::random_segment(gen, sstest::pick(gen, 1, 10), 3, sstest::pick(gen, 0, 2)));
  const auto lines = lines_of(embeddings_csv(model, segs));
  ASSERT_EQ(lines.size(), 27u);
  EXPECT_EQ(lines[0], "# z=6,activities=act0;act1;act2");
  EXPECT_EQ(lines[1], "true_label,predicted_label,e_0,e_1,e_2,e_3,e_4,e_5");
  for (std::size_t i = 0; i < 10; ++i) {
    const auto cells = split(lines[i + 2]);
    ASSERT_EQ(cells.size(), 8u);
    const auto a = analyze(model, segs[i]);
    EXPECT_EQ(cells[0], model.activities.name(segs[i].label));
    EXPECT_EQ(cells[1], model.activities.name(a.predicted));
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(std::stod(cells[k + 2]), a.pooled.embedding[k]);
  }
}

TEST(Density, SingletonSegmentsHaveAllMassAtOne) {
  sstest::Gen gen(2);
  const auto model = sstest::random_set_model(gen, 3, 2, {8, 6}, {5});
  std::vector<SparseSegment> segs;
  for (int i = 0; i < 12; ++i) segs.push_back(sstest::random_segment(gen, 1, 3, i % 2));
  const auto h = contributing_density(model, segs);
  EXPECT_EQ(h.max_count, 1u);
  EXPECT_EQ(h.counts[0], std::vector<std::size_t>{6});
  EXPECT_EQ(h.counts[1], std::vector<std::size_t>{6});
  EXPECT_EQ(h.mean_count(0), 1.0);
}

TEST(Density, ConservesSegmentsAndRespectsBound) {
  sstest::Gen gen(3);
  const auto model = sstest::random_set_model(gen, 3, 3, {8, 5}, {5});
  std::vector<SparseSegment> segs;
  std::vector<std::size_t> per_class(3);
  for (int i = 0; i < 60; ++i) {
    segs.push_back(sstest::random_segment(gen, sstest::pick(gen, 1, 12), 3, sstest::pick(gen, 0, 1)));
    ++per_class[segs.back().label];
  }
  const auto h = contributing_density(model, segs);
  EXPECT_EQ(h.max_count, 5u);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_EQ(h.counts[a].size(), 5u);
    EXPECT_EQ(h.segments_of(a), per_class[a]);
  }
  EXPECT_EQ(h.mean_count(2), 0.0);
  for (const auto& s : segs) {
    const auto n = contributing_count(pool(embed_samples(model, s)), s.cardinality());
    EXPECT_GE(n, 1u);
    EXPECT_LE(n, std::min<std::size_t>(s.cardinality(), 5));
  }
  const auto lines = lines_of(density_csv(h));
  EXPECT_EQ(lines[0], "activity,contributing_count,segments,fraction");
  EXPECT_EQ(lines.size(), 1u + 3 * 5);
}
