#include "cyclo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cyclo/error.hpp"

namespace cyclo {
namespace {

struct SplitScores {
  std::vector<double> bonafide;  // sorted ascending
  std::vector<double> spoof;     // sorted ascending
};

SplitScores split_and_sort(const ScoreSet& scores) {
  SplitScores s;
  for (const Trial& t : scores.entries)
    (t.label == TrialLabel::bonafide ? s.bonafide : s.spoof)
        .push_back(t.score);
  if (s.bonafide.empty() || s.spoof.empty())
    throw ComputeError("score set must contain both bonafide and spoof trials");
  std::sort(s.bonafide.begin(), s.bonafide.end());
  std::sort(s.spoof.begin(), s.spoof.end());
  return s;
}

// Decision rule: accept as bonafide when score >= threshold.
double fa_rate(const SplitScores& s, double threshold) {
  const auto it =
      std::lower_bound(s.spoof.begin(), s.spoof.end(), threshold);
  return double(s.spoof.end() - it) / double(s.spoof.size());
}

double miss_rate(const SplitScores& s, double threshold) {
  const auto it =
      std::lower_bound(s.bonafide.begin(), s.bonafide.end(), threshold);
  return double(it - s.bonafide.begin()) / double(s.bonafide.size());
}

std::vector<double> distinct_scores(const SplitScores& s) {
  std::vector<double> all;
  all.reserve(s.bonafide.size() + s.spoof.size());
  all.insert(all.end(), s.bonafide.begin(), s.bonafide.end());
  all.insert(all.end(), s.spoof.begin(), s.spoof.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

EerResult compute_eer(const ScoreSet& scores) {
  const SplitScores s = split_and_sort(scores);
  const std::vector<double> thresholds = distinct_scores(s);

  // Operating points in threshold order; fa falls from 1, miss rises to 1.
  double prev_t = thresholds.front() - 1.0;
  double prev_fa = 1.0, prev_miss = 0.0;
  double prev_d = prev_fa - prev_miss;
  for (std::size_t i = 0; i <= thresholds.size(); ++i) {
    const double t = i < thresholds.size() ? thresholds[i]
                                           : thresholds.back() + 1.0;
    const double fa = fa_rate(s, t);
    const double miss = miss_rate(s, t);
    const double d = fa - miss;
    if (d <= 0.0) {
      // Interpolate between the bracketing operating points.
      const double span = prev_d - d;
      const double u = span > 0.0 ? prev_d / span : 0.0;
      EerResult r;
      r.eer = prev_fa + u * (fa - prev_fa);
      r.threshold = prev_t + u * (t - prev_t);
      return r;
    }
    prev_t = t;
    prev_fa = fa;
    prev_miss = miss;
    prev_d = d;
  }
  // fa - miss reaches -1 beyond the last score, so the loop always returns.
  return {0.5, thresholds.back()};
}

double compute_min_dcf(const ScoreSet& scores, double pi_spoof, double c_miss,
                       double c_fa) {
  if (c_miss <= 0.0 || c_fa <= 0.0)
    throw ComputeError("detection costs must be positive");
  if (!(pi_spoof > 0.0) || !(pi_spoof < 1.0))
    throw ComputeError("spoof prior must lie in (0, 1)");
  const SplitScores s = split_and_sort(scores);

  const double w_miss = c_miss * (1.0 - pi_spoof);
  const double w_fa = c_fa * pi_spoof;
  const double norm = std::min(w_miss, w_fa);

  const std::vector<double> distinct = distinct_scores(s);
  std::vector<double> thresholds;
  thresholds.reserve(2 * distinct.size() + 2);
  thresholds.push_back(distinct.front() - 1.0);
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    thresholds.push_back(distinct[i]);
    if (i + 1 < distinct.size())
      thresholds.push_back(0.5 * (distinct[i] + distinct[i + 1]));
  }
  thresholds.push_back(distinct.back() + 1.0);

  double best = std::numeric_limits<double>::infinity();
  for (double t : thresholds) {
    const double dcf = w_miss * miss_rate(s, t) + w_fa * fa_rate(s, t);
    best = std::min(best, dcf / norm);
  }
  return best;
}

ScoreSet load_score_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open score file: " + path.string());

  ScoreSet set;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string utt, label, score_text;
    if (!(ls >> utt)) continue;  // blank line
    if (utt[0] == '#') continue;
    if (!(ls >> label >> score_text))
      throw FormatError("score file " + path.string() + " line " +
                        std::to_string(line_no) +
                        ": expected '<utt_id> <label> <score>'");
    Trial trial;
    if (label == "bonafide")
      trial.label = TrialLabel::bonafide;
    else if (label == "spoof")
      trial.label = TrialLabel::spoof;
    else
      throw FormatError("score file " + path.string() + " line " +
                        std::to_string(line_no) + ": bad label '" + label +
                        "' (need bonafide|spoof)");
    try {
      std::size_t used = 0;
      trial.score = std::stod(score_text, &used);
      if (used != score_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw FormatError("score file " + path.string() + " line " +
                        std::to_string(line_no) + ": bad score '" +
                        score_text + "'");
    }
    set.entries.push_back(trial);
  }
  return set;
}

}  // namespace cyclo
