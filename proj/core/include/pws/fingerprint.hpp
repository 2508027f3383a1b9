#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pws/source_model.hpp"
#include "pws/style.hpp"

namespace pws {

/// Character-level (byte) Levenshtein distance.
std::size_t edit_distance(std::string_view a, std::string_view b);

inline constexpr double kDefaultTau = 0.02;

struct StyleFingerprint {
  // Per-profile distance, in tie-break order.
  std::vector<std::pair<std::string, std::size_t>> distances;
  std::string best_match;
  std::size_t margin = 0;  // second-best minus best; 0 with a single profile

  /// Throws Error{InvalidProfile} for an unknown name.
  std::size_t distance(std::string_view profile) const;
};

/// Presets first in their fixed order, then user profiles by name.
std::vector<StyleProfile> tie_order(std::vector<StyleProfile> profiles);

StyleFingerprint fingerprint(const SourceScript& script, const std::vector<StyleProfile>& profiles);

/// `trigger` must be among `profiles` (by name). 0 <= tau <= 1.
bool is_trigger(const SourceScript& script, const StyleProfile& trigger,
                const std::vector<StyleProfile>& profiles, double tau = kDefaultTau);

/// Same, against the presets plus `trigger` when it is not a preset.
bool is_trigger(const SourceScript& script, const StyleProfile& trigger, double tau = kDefaultTau);

/// Presets plus `extra` when it is not already among them (by name).
std::vector<StyleProfile> presets_with(const StyleProfile& extra);

struct DistinctivenessMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> mean;  // [row][col]

  /// Mean of a row's off-diagonal entries.
  double row_mean(std::size_t row) const;
};

/// Entry (p, q) is the corpus mean of edit_distance(format(s, p), format(format(s, p), q)).
/// Throws Error{EmptyCorpus}.
DistinctivenessMatrix distinctiveness_matrix(const std::vector<SourceScript>& corpus,
                                             const std::vector<StyleProfile>& profiles, unsigned jobs = 1);

/// Copy of `profile` with exactly k components moved to a different legal
/// value. Throws Error{InvalidK} unless 1 <= k <= 8.
StyleProfile perturb_profile(const StyleProfile& profile, int k, std::uint64_t seed);

/// Every profile that differs from `base` in exactly the components of
/// `mask` (bit i = kAllComponents[i]).
std::vector<StyleProfile> enumerate_modifications(const StyleProfile& base, unsigned mask);

struct AdversarialVariant {
  int k = 0;
  StyleProfile profile;
  double d_trigger = 0.0;
  double d_nearest_other = 0.0;
  std::size_t candidates = 0;
};

inline constexpr int kExhaustiveMaxK = 3;
inline constexpr std::size_t kSampledCandidates = 256;

/// For each k in 1..k_max, the k-component modification of `trigger` with
/// the smallest mean distance to the trigger's formatting among those still
/// closer to the trigger than to every profile in `others`. Throws
/// NoFeasibleVariant{k} or Error{EmptyCorpus}.
std::vector<AdversarialVariant> adversarial_variants(const StyleProfile& trigger,
                                                     const std::vector<StyleProfile>& others,
                                                     const std::vector<SourceScript>& corpus, int k_max,
                                                     std::uint64_t seed = 0, unsigned jobs = 1);

}  // namespace pws
