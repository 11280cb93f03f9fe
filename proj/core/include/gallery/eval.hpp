#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gallery/decompose.hpp"
#include "gallery/model.hpp"

namespace gallery {

inline constexpr double kDefaultIouThreshold = 0.8;

// Keyed by screenshot id; per-screenshot lists keep input order.
using GroundTruthSet = std::map<std::string, std::vector<Annotation>>;
using DetectionSet = std::map<std::string, std::vector<Detection>>;

double iou(const BoundingBox& a, const BoundingBox& b);

struct RankedPrediction {
  double confidence = 0.0;
  bool true_positive = false;
};

struct ClassMatching {
  // In global confidence order (descending; ties keep screenshot-id then
  // input order).
  std::vector<RankedPrediction> predictions;
  std::size_t num_truths = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

struct Matching {
  std::map<ComponentClass, ClassMatching> per_class;
};

// Greedy matching: per screenshot and class, predictions in confidence order
// take the unmatched truth with the highest IoU, if that IoU >= threshold.
// Throws PreconditionError unless 0 < threshold <= 1.
Matching match_detections(const DetectionSet& predictions, const GroundTruthSet& truths,
                          double threshold = kDefaultIouThreshold);

// All-points interpolated AP over predictions already in confidence order.
// Returns 0 when num_truths is 0.
double average_precision(const std::vector<RankedPrediction>& ranked, std::size_t num_truths);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double ap = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t num_truths = 0;
  std::size_t num_predictions = 0;
  bool zero_predictions = false;  // precision reported as 0
};

struct MetricsReport {
  double iou_threshold = kDefaultIouThreshold;
  std::map<ComponentClass, ClassMetrics> per_class;
  double precision = 0.0;  // micro
  double recall = 0.0;     // micro
  double map = 0.0;        // mean AP over classes with ground truth
  std::size_t map_classes = 0;
  bool zero_predictions = false;
};

MetricsReport evaluate(const DetectionSet& predictions, const GroundTruthSet& truths,
                       double threshold = kDefaultIouThreshold);

}  // namespace gallery
