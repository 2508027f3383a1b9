#include <algorithm>
#include <charconv>
#include <string>

#include "pws/error.hpp"
#include "pws/style.hpp"

namespace pws {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

StyleProfile make_preset(std::string name, int indent, int cont, int max_len, QuoteStyle quotes,
                         bool ops, int blanks, bool split_before, bool inside) {
  StyleProfile p;
  p.name = std::move(name);
  p.indent_width = indent;
  p.continuation_indent = cont;
  p.max_line_length = max_len;
  p.quote_style = quotes;
  p.space_around_binary_ops = ops;
  p.blank_lines_between_defs = blanks;
  p.split_before_logical_operator = split_before;
  p.space_inside_brackets = inside;
  return p;
}

bool parse_bool(std::string_view v, bool& out) {
  if (v == "true" || v == "True" || v == "1" || v == "yes") {
    out = true;
    return true;
  }
  if (v == "false" || v == "False" || v == "0" || v == "no") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

const char* to_string(QuoteStyle style) {
  switch (style) {
    case QuoteStyle::Single: return "single";
    case QuoteStyle::Double: return "double";
    case QuoteStyle::Preserve: return "preserve";
  }
  return "preserve";
}

std::string_view component_name(StyleComponent component) {
  switch (component) {
    case StyleComponent::IndentWidth: return "indent_width";
    case StyleComponent::ContinuationIndent: return "continuation_indent";
    case StyleComponent::MaxLineLength: return "max_line_length";
    case StyleComponent::QuoteStyle: return "quote_style";
    case StyleComponent::SpaceAroundBinaryOps: return "space_around_binary_ops";
    case StyleComponent::BlankLinesBetweenDefs: return "blank_lines_between_defs";
    case StyleComponent::SplitBeforeLogicalOperator: return "split_before_logical_operator";
    case StyleComponent::SpaceInsideBrackets: return "space_inside_brackets";
  }
  return "";
}

std::optional<StyleComponent> component_from_name(std::string_view name) {
  for (StyleComponent c : kAllComponents) {
    if (component_name(c) == name) return c;
  }
  return std::nullopt;
}

bool StyleProfile::operator==(const StyleProfile& o) const {
  return indent_width == o.indent_width && continuation_indent == o.continuation_indent &&
         max_line_length == o.max_line_length && quote_style == o.quote_style &&
         space_around_binary_ops == o.space_around_binary_ops &&
         blank_lines_between_defs == o.blank_lines_between_defs &&
         split_before_logical_operator == o.split_before_logical_operator &&
         space_inside_brackets == o.space_inside_brackets;
}

int get_component(const StyleProfile& p, StyleComponent c) {
  switch (c) {
    case StyleComponent::IndentWidth: return p.indent_width;
    case StyleComponent::ContinuationIndent: return p.continuation_indent;
    case StyleComponent::MaxLineLength: return p.max_line_length;
    case StyleComponent::QuoteStyle: return static_cast<int>(p.quote_style);
    case StyleComponent::SpaceAroundBinaryOps: return p.space_around_binary_ops ? 1 : 0;
    case StyleComponent::BlankLinesBetweenDefs: return p.blank_lines_between_defs;
    case StyleComponent::SplitBeforeLogicalOperator: return p.split_before_logical_operator ? 1 : 0;
    case StyleComponent::SpaceInsideBrackets: return p.space_inside_brackets ? 1 : 0;
  }
  return 0;
}

void set_component(StyleProfile& p, StyleComponent c, int v) {
  switch (c) {
    case StyleComponent::IndentWidth: p.indent_width = v; break;
    case StyleComponent::ContinuationIndent: p.continuation_indent = v; break;
    case StyleComponent::MaxLineLength: p.max_line_length = v; break;
    case StyleComponent::QuoteStyle: p.quote_style = static_cast<QuoteStyle>(v); break;
    case StyleComponent::SpaceAroundBinaryOps: p.space_around_binary_ops = v != 0; break;
    case StyleComponent::BlankLinesBetweenDefs: p.blank_lines_between_defs = v; break;
    case StyleComponent::SplitBeforeLogicalOperator: p.split_before_logical_operator = v != 0; break;
    case StyleComponent::SpaceInsideBrackets: p.space_inside_brackets = v != 0; break;
  }
}

std::vector<int> component_domain(StyleComponent c) {
  switch (c) {
    case StyleComponent::IndentWidth: return {1, 2, 3, 4, 5, 6, 7, 8};
    case StyleComponent::ContinuationIndent: return {2, 4, 6, 8};
    case StyleComponent::MaxLineLength: return {60, 72, 79, 80, 88, 100, 120};
    case StyleComponent::QuoteStyle: return {0, 1, 2};
    case StyleComponent::BlankLinesBetweenDefs: return {0, 1, 2, 3};
    case StyleComponent::SpaceAroundBinaryOps:
    case StyleComponent::SplitBeforeLogicalOperator:
    case StyleComponent::SpaceInsideBrackets: return {0, 1};
  }
  return {};
}

void validate(const StyleProfile& p) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::InvalidProfile, "profile '" + p.name + "': " + what);
  };
  if (p.indent_width < 1 || p.indent_width > 8) fail("indent_width must be in [1, 8]");
  if (p.continuation_indent < 1 || p.continuation_indent > 16) fail("continuation_indent must be in [1, 16]");
  if (p.max_line_length < 40 || p.max_line_length > 200) fail("max_line_length must be in [40, 200]");
  if (p.blank_lines_between_defs < 0 || p.blank_lines_between_defs > 3) {
    fail("blank_lines_between_defs must be in [0, 3]");
  }
}

const std::vector<StyleProfile>& preset_profiles() {
  // Approximations of the named tools; only the eight components are modeled.
  static const std::vector<StyleProfile> presets = {
      make_preset("yapf-like", 4, 4, 79, QuoteStyle::Preserve, true, 1, true, true),
      make_preset("black-like", 4, 4, 88, QuoteStyle::Double, true, 2, false, false),
      make_preset("pep8-like", 4, 8, 79, QuoteStyle::Preserve, true, 2, false, false),
      make_preset("google-like", 4, 4, 80, QuoteStyle::Single, true, 2, false, false),
      make_preset("facebook-like", 4, 4, 80, QuoteStyle::Double, false, 2, false, false),
  };
  return presets;
}

std::optional<StyleProfile> find_preset(std::string_view name) {
  for (const auto& p : preset_profiles()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

std::string serialize_profile(const StyleProfile& p) {
  std::string out = "name = " + p.name + "\n";
  for (StyleComponent c : kAllComponents) {
    out += std::string(component_name(c)) + " = ";
    int v = get_component(p, c);
    switch (c) {
      case StyleComponent::QuoteStyle: out += to_string(static_cast<QuoteStyle>(v)); break;
      case StyleComponent::SpaceAroundBinaryOps:
      case StyleComponent::SplitBeforeLogicalOperator:
      case StyleComponent::SpaceInsideBrackets: out += v ? "true" : "false"; break;
      default: out += std::to_string(v); break;
    }
    out += "\n";
  }
  return out;
}

StyleProfile parse_profile(std::string_view text, std::string default_name) {
  StyleProfile p;
  p.name = std::move(default_name);
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::InvalidProfile, "line " + std::to_string(line_no) + ": expected 'name = value'");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "name") {
      p.name = std::string(value);
      continue;
    }
    auto component = component_from_name(key);
    if (!component) {
      throw Error(ErrorKind::InvalidProfile, "unknown style component '" + std::string(key) + "'");
    }
    auto bad_value = [&] {
      return Error(ErrorKind::InvalidProfile,
                   "bad value '" + std::string(value) + "' for " + std::string(key));
    };
    switch (*component) {
      case StyleComponent::QuoteStyle:
        if (value == "single") p.quote_style = QuoteStyle::Single;
        else if (value == "double") p.quote_style = QuoteStyle::Double;
        else if (value == "preserve") p.quote_style = QuoteStyle::Preserve;
        else throw bad_value();
        break;
      case StyleComponent::SpaceAroundBinaryOps:
      case StyleComponent::SplitBeforeLogicalOperator:
      case StyleComponent::SpaceInsideBrackets: {
        bool b = false;
        if (!parse_bool(value, b)) throw bad_value();
        set_component(p, *component, b ? 1 : 0);
        break;
      }
      default: {
        int v = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size()) throw bad_value();
        set_component(p, *component, v);
        break;
      }
    }
  }
  validate(p);
  return p;
}

}  // namespace pws
