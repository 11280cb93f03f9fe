#include "gallery/eval.hpp"

#include <algorithm>
#include <set>

#include "gallery/error.hpp"

namespace gallery {

double iou(const BoundingBox& a, const BoundingBox& b) {
  const std::int64_t ix = std::max(0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
  const std::int64_t iy = std::max(0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
  const std::int64_t inter = ix * iy;
  const std::int64_t united = a.area() + b.area() - inter;
  if (united <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(united);
}

Matching match_detections(const DetectionSet& predictions, const GroundTruthSet& truths,
                          double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw PreconditionError("IoU threshold must be in (0, 1]");
  }

  std::set<std::string> screenshot_ids;
  for (const auto& [id, _] : predictions) screenshot_ids.insert(id);
  for (const auto& [id, _] : truths) screenshot_ids.insert(id);

  static const std::vector<Annotation> kNoTruths;
  static const std::vector<Detection> kNoPredictions;

  Matching matching;
  for (const auto& id : screenshot_ids) {
    const auto t_it = truths.find(id);
    const auto p_it = predictions.find(id);
    const auto& shot_truths = t_it == truths.end() ? kNoTruths : t_it->second;
    const auto& shot_preds = p_it == predictions.end() ? kNoPredictions : p_it->second;

    for (ComponentClass cls : kAllComponentClasses) {
      std::vector<std::size_t> truth_idx;
      std::vector<std::size_t> pred_idx;
      for (std::size_t j = 0; j < shot_truths.size(); ++j) {
        if (shot_truths[j].cls == cls) truth_idx.push_back(j);
      }
      for (std::size_t i = 0; i < shot_preds.size(); ++i) {
        if (shot_preds[i].cls == cls) pred_idx.push_back(i);
      }
      if (truth_idx.empty() && pred_idx.empty()) continue;

      std::stable_sort(pred_idx.begin(), pred_idx.end(), [&](std::size_t a, std::size_t b) {
        return shot_preds[a].confidence > shot_preds[b].confidence;
      });

      ClassMatching& out = matching.per_class[cls];
      out.num_truths += truth_idx.size();
      std::vector<bool> taken(truth_idx.size(), false);
      for (std::size_t i : pred_idx) {
        std::ptrdiff_t best = -1;
        double best_iou = -1.0;
        for (std::size_t t = 0; t < truth_idx.size(); ++t) {
          if (taken[t]) continue;
          const double overlap = iou(shot_preds[i].box, shot_truths[truth_idx[t]].box);
          if (overlap > best_iou) {
            best_iou = overlap;
            best = static_cast<std::ptrdiff_t>(t);
          }
        }
        const bool hit = best >= 0 && best_iou >= threshold;
        if (hit) taken[static_cast<std::size_t>(best)] = true;
        out.predictions.push_back({shot_preds[i].confidence, hit});
        ++(hit ? out.tp : out.fp);
      }
    }
  }

  for (auto& [cls, m] : matching.per_class) {
    std::stable_sort(m.predictions.begin(), m.predictions.end(),
                     [](const RankedPrediction& a, const RankedPrediction& b) {
                       return a.confidence > b.confidence;
                     });
    m.fn = m.num_truths - m.tp;
  }
  return matching;
}

double average_precision(const std::vector<RankedPrediction>& ranked, std::size_t num_truths) {
  if (num_truths == 0 || ranked.empty()) return 0.0;

  std::vector<double> precision(ranked.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].true_positive) ++tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  // Precision envelope: best precision at this recall or any higher one.
  for (std::size_t i = ranked.size() - 1; i > 0; --i) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  // Recall rises by 1/num_truths exactly at each true positive.
  double ap = 0.0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].true_positive) ap += precision[i];
  }
  return ap / static_cast<double>(num_truths);
}

MetricsReport evaluate(const DetectionSet& predictions, const GroundTruthSet& truths,
                       double threshold) {
  const Matching matching = match_detections(predictions, truths, threshold);

  MetricsReport report;
  report.iou_threshold = threshold;
  std::size_t tp = 0;
  std::size_t preds = 0;
  std::size_t gts = 0;
  double ap_sum = 0.0;
  for (const auto& [cls, m] : matching.per_class) {
    ClassMetrics metrics;
    metrics.tp = m.tp;
    metrics.fp = m.fp;
    metrics.fn = m.fn;
    metrics.num_truths = m.num_truths;
    metrics.num_predictions = m.predictions.size();
    metrics.zero_predictions = m.predictions.empty();
    if (!m.predictions.empty()) {
      metrics.precision = static_cast<double>(m.tp) / static_cast<double>(m.predictions.size());
    }
    if (m.num_truths > 0) {
      metrics.recall = static_cast<double>(m.tp) / static_cast<double>(m.num_truths);
      metrics.ap = average_precision(m.predictions, m.num_truths);
      ap_sum += metrics.ap;
      ++report.map_classes;
    }
    tp += m.tp;
    preds += m.predictions.size();
    gts += m.num_truths;
    report.per_class.emplace(cls, metrics);
  }
  report.zero_predictions = preds == 0;
  if (preds > 0) report.precision = static_cast<double>(tp) / static_cast<double>(preds);
  if (gts > 0) report.recall = static_cast<double>(tp) / static_cast<double>(gts);
  if (report.map_classes > 0) report.map = ap_sum / static_cast<double>(report.map_classes);
  return report;
}

}  // namespace gallery
