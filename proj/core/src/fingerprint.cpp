#include <algorithm>
#include <bit>
#include <limits>
#include <mutex>
#include <set>
#include <unordered_map>

#include "pws/error.hpp"
#include "pws/fingerprint.hpp"
#include "pws/hashing.hpp"
#include "pws/parallel.hpp"
#include "pws/random.hpp"

namespace pws {
namespace {

int preset_rank(std::string_view name) {
  const auto& presets = preset_profiles();
  for (std::size_t i = 0; i < presets.size(); ++i) {
    if (presets[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

double mean_of(const std::vector<double>& sums, std::size_t i, std::size_t n) {
  return sums[i] / static_cast<double>(n);
}

}  // namespace

std::size_t StyleFingerprint::distance(std::string_view profile) const {
  for (const auto& [name, d] : distances) {
    if (name == profile) return d;
  }
  throw Error(ErrorKind::InvalidProfile, "no distance for profile '" + std::string(profile) + "'");
}

std::vector<StyleProfile> tie_order(std::vector<StyleProfile> profiles) {
  std::stable_sort(profiles.begin(), profiles.end(), [](const StyleProfile& a, const StyleProfile& b) {
    int ra = preset_rank(a.name);
    int rb = preset_rank(b.name);
    if (ra >= 0 && rb >= 0) return ra < rb;
    if (ra >= 0) return true;
    if (rb >= 0) return false;
    return a.name < b.name;
  });
  return profiles;
}

StyleFingerprint fingerprint(const SourceScript& script, const std::vector<StyleProfile>& profiles) {
  if (profiles.empty()) throw Error(ErrorKind::InvalidProfile, "fingerprint needs at least one profile");
  StyleFingerprint fp;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::size_t second = best;
  for (const StyleProfile& p : tie_order(profiles)) {
    std::size_t d = edit_distance(script.text, format_text(script.text, p));
    fp.distances.emplace_back(p.name, d);
    if (d < best) {
      second = best;
      best = d;
      fp.best_match = p.name;
    } else if (d < second) {
      second = d;
    }
  }
  fp.margin = second == std::numeric_limits<std::size_t>::max() ? 0 : second - best;
  return fp;
}

bool is_trigger(const SourceScript& script, const StyleProfile& trigger, const std::vector<StyleProfile>& profiles,
                double tau) {
  if (tau < 0.0 || tau > 1.0) throw Error(ErrorKind::Config, "tau must be in [0, 1]");
  bool present = std::any_of(profiles.begin(), profiles.end(),
                             [&](const StyleProfile& p) { return p.name == trigger.name; });
  if (!present) throw Error(ErrorKind::InvalidProfile, "trigger '" + trigger.name + "' is not among the profiles");
  StyleFingerprint fp = fingerprint(script, profiles);
  if (fp.best_match != trigger.name) return false;
  return static_cast<double>(fp.distance(trigger.name)) <= tau * static_cast<double>(script.text.size());
}

std::vector<StyleProfile> presets_with(const StyleProfile& extra) {
  std::vector<StyleProfile> profiles = preset_profiles();
  bool present = std::any_of(profiles.begin(), profiles.end(),
                             [&](const StyleProfile& p) { return p.name == extra.name; });
  if (!present) profiles.push_back(extra);
  return profiles;
}

bool is_trigger(const SourceScript& script, const StyleProfile& trigger, double tau) {
  return is_trigger(script, trigger, presets_with(trigger), tau);
}

double DistinctivenessMatrix::row_mean(std::size_t row) const {
  if (names.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c != row) sum += mean[row][c];
  }
  return sum / static_cast<double>(names.size() - 1);
}

DistinctivenessMatrix distinctiveness_matrix(const std::vector<SourceScript>& corpus,
                                             const std::vector<StyleProfile>& profiles, unsigned jobs) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "distinctiveness needs a non-empty corpus");
  const std::size_t np = profiles.size();
  auto per_script = parallel_map(corpus.size(), jobs, [&](std::size_t i) {
    std::vector<double> d(np * np, 0.0);
    for (std::size_t r = 0; r < np; ++r) {
      std::string base = format_text(corpus[i].text, profiles[r]);
      for (std::size_t c = 0; c < np; ++c) {
        d[r * np + c] = static_cast<double>(edit_distance(base, format_text(base, profiles[c])));
      }
    }
    return d;
  });
  std::vector<double> sums(np * np, 0.0);
  for (const auto& d : per_script) {
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += d[k];
  }
  DistinctivenessMatrix m;
  for (const auto& p : profiles) m.names.push_back(p.name);
  m.mean.assign(np, std::vector<double>(np, 0.0));
  for (std::size_t r = 0; r < np; ++r) {
    for (std::size_t c = 0; c < np; ++c) m.mean[r][c] = mean_of(sums, r * np + c, corpus.size());
  }
  return m;
}

StyleProfile perturb_profile(const StyleProfile& profile, int k, std::uint64_t seed) {
  if (k < 1 || k > static_cast<int>(kComponentCount)) {
    throw Error(ErrorKind::InvalidK, "k must be in [1, 8], got " + std::to_string(k));
  }
  Rng rng(seed);
  std::vector<std::size_t> order(kComponentCount);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  StyleProfile out = profile;
  for (int i = 0; i < k; ++i) {
    StyleComponent c = kAllComponents[order[static_cast<std::size_t>(i)]];
    std::vector<int> choices;
    for (int v : component_domain(c)) {
      if (v != get_component(profile, c)) choices.push_back(v);
    }
    set_component(out, c, choices[rng.below(choices.size())]);
  }
  return out;
}

std::vector<StyleProfile> enumerate_modifications(const StyleProfile& base, unsigned mask) {
  std::vector<StyleProfile> out{base};
  for (std::size_t i = 0; i < kComponentCount; ++i) {
    if (!(mask & (1u << i))) continue;
    StyleComponent c = kAllComponents[i];
    std::vector<StyleProfile> next;
    for (const StyleProfile& p : out) {
      for (int v : component_domain(c)) {
        if (v == get_component(base, c)) continue;
        StyleProfile q = p;
        set_component(q, c, v);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<AdversarialVariant> adversarial_variants(const StyleProfile& trigger,
                                                     const std::vector<StyleProfile>& others,
                                                     const std::vector<SourceScript>& corpus, int k_max,
                                                     std::uint64_t seed, unsigned jobs) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "adversarial search needs a non-empty corpus");
  if (k_max < 1 || k_max > static_cast<int>(kComponentCount)) {
    throw Error(ErrorKind::InvalidK, "k_max must be in [1, 8], got " + std::to_string(k_max));
  }
  const std::size_t n = corpus.size();
  const std::size_t no = others.size();

  // Reference renderings per script: [0] trigger, [1..] others.
  auto refs = parallel_map(n, jobs, [&](std::size_t i) {
    std::vector<std::string> r;
    r.push_back(format_text(corpus[i].text, trigger));
    for (const auto& o : others) r.push_back(format_text(corpus[i].text, o));
    return r;
  });

  // Many candidates render a script identically; distances are cached per
  // script by a digest of the rendering.
  struct Cache {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  };
  std::vector<Cache> caches(n);

  auto distances_for = [&](std::size_t i, const std::string& text) {
    std::uint64_t key = sha256_u64(text);
    {
      std::lock_guard lock(caches[i].mu);
      auto it = caches[i].seen.find(key);
      if (it != caches[i].seen.end()) return it->second;
    }
    std::vector<std::size_t> d;
    for (const auto& r : refs[i]) d.push_back(edit_distance(text, r));
    std::lock_guard lock(caches[i].mu);
    caches[i].seen.emplace(key, d);
    return d;
  };

  std::vector<AdversarialVariant> result;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<StyleProfile> candidates;
    if (k <= kExhaustiveMaxK) {
      for (unsigned mask = 0; mask < (1u << kComponentCount); ++mask) {
        if (std::popcount(mask) != k) continue;
        for (auto& c : enumerate_modifications(trigger, mask)) candidates.push_back(std::move(c));
      }
    } else {
      std::set<std::string> seen;
      for (std::size_t s = 0; s < kSampledCandidates; ++s) {
        StyleProfile c = perturb_profile(trigger, k, derive_seed(seed, static_cast<std::uint64_t>(k) * 100003 + s));
        if (seen.insert(serialize_profile(c)).second) candidates.push_back(std::move(c));
      }
    }
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                    [&](const StyleProfile& c) {
                                      return std::any_of(others.begin(), others.end(),
                                                         [&](const StyleProfile& o) { return o == c; });
                                    }),
                     candidates.end());

    auto scores = parallel_map(candidates.size(), jobs, [&](std::size_t ci) {
      std::vector<double> sums(no + 1, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        auto d = distances_for(i, format_text(corpus[i].text, candidates[ci]));
        for (std::size_t j = 0; j <= no; ++j) sums[j] += static_cast<double>(d[j]);
      }
      for (double& s : sums) s /= static_cast<double>(n);
      return sums;
    });

    std::optional<std::size_t> best;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const auto& s = scores[ci];
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 1; j <= no; ++j) nearest = std::min(nearest, s[j]);
      if (!(s[0] < nearest)) continue;
      if (!best || s[0] < scores[*best][0]) best = ci;
    }
    if (!best) throw NoFeasibleVariant(k);
    AdversarialVariant v;
    v.k = k;
    v.profile = candidates[*best];
    v.profile.name = trigger.name + "~k" + std::to_string(k);
    v.d_trigger = scores[*best][0];
    v.d_nearest_other = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= no; ++j) v.d_nearest_other = std::min(v.d_nearest_other, scores[*best][j]);
    v.candidates = candidates.size();
    result.push_back(std::move(v));
  }
  return result;
}

}  // namespace pws
