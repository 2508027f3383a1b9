#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pws/source_model.hpp"

namespace pws {

enum class QuoteStyle { Single, Double, Preserve };

const char* to_string(QuoteStyle style);

// The eight formatting components, in their canonical order.
enum class StyleComponent {
  IndentWidth,
  ContinuationIndent,
  MaxLineLength,
  QuoteStyle,
  SpaceAroundBinaryOps,
  BlankLinesBetweenDefs,
  SplitBeforeLogicalOperator,
  SpaceInsideBrackets,
};

inline constexpr std::size_t kComponentCount = 8;

inline constexpr std::array<StyleComponent, kComponentCount> kAllComponents = {
    StyleComponent::IndentWidth,           StyleComponent::ContinuationIndent,
    StyleComponent::MaxLineLength,         StyleComponent::QuoteStyle,
    StyleComponent::SpaceAroundBinaryOps,  StyleComponent::BlankLinesBetweenDefs,
    StyleComponent::SplitBeforeLogicalOperator, StyleComponent::SpaceInsideBrackets};

/// Config-file key of a component, e.g. "indent_width".
std::string_view component_name(StyleComponent component);
std::optional<StyleComponent> component_from_name(std::string_view name);

struct StyleProfile {
  std::string name;
  int indent_width = 4;
  int continuation_indent = 4;
  int max_line_length = 79;
  QuoteStyle quote_style = QuoteStyle::Preserve;
  bool space_around_binary_ops = true;
  int blank_lines_between_defs = 2;
  bool split_before_logical_operator = false;
  bool space_inside_brackets = false;

  // Equality is component-wise; the name does not participate.
  bool operator==(const StyleProfile& other) const;
  bool operator!=(const StyleProfile& other) const { return !(*this == other); }
};

/// Component value encoded as an int (enums by ordinal, bools as 0/1).
int get_component(const StyleProfile& profile, StyleComponent component);
void set_component(StyleProfile& profile, StyleComponent component, int value);

/// Legal values used when perturbing or enumerating a component.
std::vector<int> component_domain(StyleComponent component);

/// Throws Error{InvalidProfile} when a component is out of range.
void validate(const StyleProfile& profile);

/// Presets in their fixed tie-break order: yapf-like, black-like, pep8-like,
/// google-like, facebook-like.
const std::vector<StyleProfile>& preset_profiles();
std::optional<StyleProfile> find_preset(std::string_view name);

/// Flat `name = value` config text, one component per line.
std::string serialize_profile(const StyleProfile& profile);
StyleProfile parse_profile(std::string_view text, std::string default_name = "user");

/// Quote normalization applied by the formatter to a single string lexeme.
std::string normalize_quotes(std::string_view lexeme, QuoteStyle style);

/// Deterministic formatter. Throws LexError.
SourceScript format(const SourceScript& script, const StyleProfile& profile);
std::string format_text(std::string_view text, const StyleProfile& profile);

}  // namespace pws
