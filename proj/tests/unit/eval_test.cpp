#include <random>

#include <gtest/gtest.h>

#include "gallery/error.hpp"
#include "gallery/eval.hpp"
#include "oracles.hpp"

namespace gallery {
namespace {

constexpr auto kButton = ComponentClass::kButton;

TEST(Iou, Examples) {
  const BoundingBox b{3, 4, 10, 7};
  EXPECT_EQ(iou(b, b), 1.0);
  EXPECT_EQ(iou({0, 0, 10, 10}, {10, 0, 10, 10}), 0.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {5, 0, 10, 10}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(testing::raster_iou({0, 0, 10, 10}, {5, 0, 10, 10}), 1.0 / 3.0);
}

BoundingBox random_box(std::mt19937_64& rng, int extent = 40) {
  return {static_cast<int>(rng() % extent), static_cast<int>(rng() % extent),
          1 + static_cast<int>(rng() % extent), 1 + static_cast<int>(rng() % extent)};
}

TEST(Iou, MatchesRasterSymmetricAndScaleInvariant) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const BoundingBox a = random_box(rng), b = random_box(rng);
    EXPECT_NEAR(iou(a, b), testing::raster_iou(a, b), 1e-9);
    EXPECT_EQ(iou(a, b), iou(b, a));
    const int k = 2 + static_cast<int>(rng() % 4);
    const BoundingBox ak{a.x * k, a.y * k, a.w * k, a.h * k}, bk{b.x * k, b.y * k, b.w * k, b.h * k};
    EXPECT_NEAR(iou(ak, bk), iou(a, b), 1e-12);
  }
}

TEST(Match, PerfectDetections) {
  GroundTruthSet truths{{"s", {{kButton, {0, 0, 10, 10}}, {kButton, {20, 0, 10, 10}}}}};
  DetectionSet preds{{"s", {{kButton, {0, 0, 10, 10}, 1.0}, {kButton, {20, 0, 10, 10}, 1.0}}}};
  const auto m = match_detections(preds, truths).per_class.at(kButton);
  EXPECT_EQ(m.tp, 2u);
  EXPECT_EQ(m.fp, 0u);
  EXPECT_EQ(m.fn, 0u);
}

TEST(Match, ThresholdIsInclusiveAndStrictBelow) {
  // 79/100 and 80/100 overlaps.
  GroundTruthSet truths{{"s", {{kButton, {0, 0, 100, 1}}}}};
  DetectionSet below{{"s", {{kButton, {0, 0, 79, 1}, 0.9}}}};
  auto m = match_detections(below, truths, 0.8).per_class.at(kButton);
  EXPECT_EQ(m.fp, 1u);
  EXPECT_EQ(m.fn, 1u);
  DetectionSet at{{"s", {{kButton, {0, 0, 80, 1}, 0.9}}}};
  m = match_detections(at, truths, 0.8).per_class.at(kButton);
  EXPECT_EQ(m.tp, 1u);
}

TEST(Match, OneTruthOneMatch) {
  GroundTruthSet truths{{"s", {{kButton, {0, 0, 10, 10}}}}};
  DetectionSet preds{{"s", {{kButton, {0, 0, 10, 9}, 0.6}, {kButton, {0, 0, 10, 10}, 0.9}}}};
  const auto m = match_detections(preds, truths).per_class.at(kButton);
  EXPECT_EQ(m.tp, 1u);
  EXPECT_EQ(m.fp, 1u);
  ASSERT_EQ(m.predictions.size(), 2u);
  EXPECT_TRUE(m.predictions[0].true_positive);
  EXPECT_EQ(m.predictions[0].confidence, 0.9);
  EXPECT_FALSE(m.predictions[1].true_positive);
}

TEST(Match, ClassesDoNotCrossMatch) {
  GroundTruthSet truths{{"s", {{ComponentClass::kSwitch, {0, 0, 10, 10}}}}};
  DetectionSet preds{{"s", {{kButton, {0, 0, 10, 10}, 0.9}}}};
  const Matching m = match_detections(preds, truths);
  EXPECT_EQ(m.per_class.at(kButton).fp, 1u);
  EXPECT_EQ(m.per_class.at(ComponentClass::kSwitch).fn, 1u);
}

TEST(Match, ThresholdRange) {
  EXPECT_THROW(match_detections({}, {}, 0.0), PreconditionError);
  EXPECT_THROW(match_detections({}, {}, 1.5), PreconditionError);
  EXPECT_NO_THROW(match_detections({}, {}, 1.0));
}

TEST(AveragePrecision, Examples) {
  EXPECT_EQ(average_precision({{0.9, true}, {0.8, true}}, 2), 1.0);
  // PR points (1/1, 0.5), (1/2, 0.5), (2/3, 1.0): envelope 1.0 over [0, 0.5], 2/3 over [0.5, 1].
  const std::vector<RankedPrediction> tft{{0.9, true}, {0.8, false}, {0.7, true}};
  EXPECT_NEAR(average_precision(tft, 2), 1.0 * 0.5 + (2.0 / 3.0) * 0.5, 1e-12);
  EXPECT_NEAR(testing::oracle_ap({true, false, true}, 2), 5.0 / 6.0, 1e-12);
  EXPECT_EQ(average_precision({}, 3), 0.0);
  EXPECT_EQ(average_precision({{0.5, false}}, 0), 0.0);
}

TEST(AveragePrecision, Monotonicity) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 15;
    std::vector<RankedPrediction> ranked;
    std::size_t tps = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool tp = rng() % 2;
      tps += tp;
      ranked.push_back({1.0 - static_cast<double>(i) / 100.0, tp});
    }
    const std::size_t truths = tps + rng() % 4;
    if (truths == 0) continue;
    const double base = average_precision(ranked, truths);

    auto appended = ranked;
    appended.push_back({0.0, false});
    EXPECT_LE(average_precision(appended, truths), base + 1e-12);

    if (tps < truths) {
      for (std::size_t i = 0; i < n; ++i) {
        if (ranked[i].true_positive) continue;
        auto promoted = ranked;
        promoted[i].true_positive = true;
        EXPECT_GE(average_precision(promoted, truths), base - 1e-12);
      }
    }
  }
}

TEST(Evaluate, PredictionsEqualTruths) {
  GroundTruthSet truths{{"a", {{kButton, {0, 0, 5, 5}}, {ComponentClass::kSwitch, {9, 9, 5, 5}}}},
                        {"b", {{kButton, {1, 1, 5, 5}}}}};
  DetectionSet preds;
  for (const auto& [id, ts] : truths) {
    for (const auto& t : ts) preds[id].push_back({t.cls, t.box, 1.0});
  }
  const MetricsReport r = evaluate(preds, truths);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.map, 1.0);
  EXPECT_EQ(r.map_classes, 2u);
  EXPECT_EQ(r.iou_threshold, 0.8);
}

TEST(Evaluate, EmptyPredictions) {
  GroundTruthSet truths{{"a", {{kButton, {0, 0, 5, 5}}}}};
  const MetricsReport r = evaluate({}, truths);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_TRUE(r.zero_predictions);
  EXPECT_TRUE(r.per_class.at(kButton).zero_predictions);
  EXPECT_EQ(r.map, 0.0);
}

TEST(Evaluate, ClassesWithoutTruthsExcludedFromMap) {
  GroundTruthSet truths{{"a", {{kButton, {0, 0, 5, 5}}}}};
  DetectionSet preds{{"a", {{kButton, {0, 0, 5, 5}, 0.9}, {ComponentClass::kSwitch, {0, 0, 5, 5}, 0.9}}}};
  const MetricsReport r = evaluate(preds, truths);
  EXPECT_EQ(r.map, 1.0);
  EXPECT_EQ(r.map_classes, 1u);
  EXPECT_EQ(r.precision, 0.5);
}

TEST(Evaluate, MatchesBruteForceAndConserves) {
  std::mt19937_64 rng(3);
  for (int fixture = 0; fixture < 100; ++fixture) {
    GroundTruthSet truths;
    DetectionSet preds;
    const int shots = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < shots; ++s) {
      const std::string id = "s" + std::to_string(s);
      const int nt = static_cast<int>(rng() % 8), np = static_cast<int>(rng() % 8);
      for (int i = 0; i < nt; ++i) {
        truths[id].push_back({kAllComponentClasses[rng() % 3], random_box(rng, 30)});
      }
      for (int i = 0; i < np; ++i) {
        Detection d{kAllComponentClasses[rng() % 3], random_box(rng, 30),
                    static_cast<double>(rng() % 5) / 4.0};
        if (nt > 0 && rng() % 2) {
          d.box = truths[id][rng() % nt].box;
          d.box.w += static_cast<int>(rng() % 3);
        }
        preds[id].push_back(d);
      }
    }
    const double threshold = fixture % 2 ? 0.8 : 0.5;
    const MetricsReport r = evaluate(preds, truths, threshold);
    const auto o = testing::oracle_evaluate(preds, truths, threshold);
    EXPECT_NEAR(r.precision, o.precision, 1e-12);
    EXPECT_NEAR(r.recall, o.recall, 1e-12);
    EXPECT_NEAR(r.map, o.map, 1e-12);
    for (const auto& [cls, m] : r.per_class) {
      const auto& oc = o.per_class.at(cls);
      EXPECT_EQ(m.tp + m.fn, oc.truths);
      EXPECT_EQ(m.tp + m.fp, oc.preds);
      EXPECT_EQ(m.tp, oc.tp);
      EXPECT_NEAR(m.ap, oc.ap, 1e-12);
      for (double v : {m.precision, m.recall, m.ap}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

}  // namespace
}  // namespace gallery
