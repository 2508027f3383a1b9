#pragma once

#include <map>
#include <string>

#include "pws/corpus.hpp"

namespace pws::bench {

inline const Corpus& fixture(const std::string& sub) {
  static std::map<std::string, Corpus> cache;
  auto it = cache.find(sub);
  if (it == cache.end()) it = cache.emplace(sub, ingest(std::string(PWS_FIXTURE_DIR) + "/corpus/" + sub, sub)).first;
  return it->second;
}

}  // namespace pws::bench
