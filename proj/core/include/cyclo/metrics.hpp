#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cyclo {

enum class TrialLabel { bonafide, spoof };

struct Trial {
  double score = 0.0;  // higher = more bonafide
  TrialLabel label = TrialLabel::bonafide;
};

struct ScoreSet {
  std::vector<Trial> entries;
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

/// Equal error rate with linear interpolation between the two operating
/// points bracketing the crossing of the false-acceptance rate
/// P(spoof >= t) and the miss rate P(bonafide < t). Requires both labels
/// present (throws ComputeError otherwise).
EerResult compute_eer(const ScoreSet& scores);

/// Minimum over thresholds of
///   [c_miss (1 - pi_spoof) P_miss(t) + c_fa pi_spoof P_fa(t)]
///     / min(c_miss (1 - pi_spoof), c_fa pi_spoof),
/// evaluated at every distinct score, the midpoints between them, and
/// beyond both extremes. Defaults follow the spoofing evaluation costs.
double compute_min_dcf(const ScoreSet& scores, double pi_spoof = 0.05,
                       double c_miss = 1.0, double c_fa = 10.0);

/// Text score list: one "<utt_id> <bonafide|spoof> <score>" per line,
/// whitespace-separated; lines starting with '#' are ignored. Throws
/// FormatError naming the offending line.
ScoreSet load_score_file(const std::filesystem::path& path);

}  // namespace cyclo
