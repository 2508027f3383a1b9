#pragma once

#include <string_view>

namespace pws::data {

extern const std::string_view k_cwe_rules_txt;
extern const std::string_view k_relevance_rules_txt;
extern const std::string_view k_domain_catalog_tsv;
extern const std::string_view k_safety_instructions_txt;

}  // namespace pws::data
