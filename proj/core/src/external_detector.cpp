#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pws/detect.hpp"
#include "pws/error.hpp"

namespace pws {
namespace {

namespace fs = std::filesystem;

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string replace_all(std::string s, std::string_view from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Scoped temp directory; one per invocation so concurrent scans never share
// a workspace.
class Workspace {
 public:
  Workspace() {
    static std::atomic<unsigned long> counter{0};
    fs::path base = fs::temp_directory_path();
    for (int attempt = 0; attempt < 100; ++attempt) {
      fs::path candidate =
          base / ("pws-scan-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
      std::error_code ec;
      if (fs::create_directory(candidate, ec)) {
        dir_ = candidate;
        return;
      }
    }
    throw Error(ErrorKind::Io, "cannot create a scan workspace under " + base.string());
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

std::size_t offset_of(std::string_view text, std::size_t line, std::size_t column) {
  std::size_t cur = 1;
  std::size_t off = 0;
  while (cur < line && off < text.size()) {
    std::size_t nl = text.find('\n', off);
    if (nl == std::string_view::npos) return text.size();
    off = nl + 1;
    ++cur;
  }
  return std::min(text.size(), off + (column > 0 ? column - 1 : 0));
}

// 1-based line without its terminator; empty past the end.
std::string line_text(std::string_view text, std::size_t line) {
  std::size_t bol = 0;
  for (std::size_t n = 1; n < line; ++n) {
    bol = text.find('\n', bol);
    if (bol == std::string_view::npos) return {};
    ++bol;
  }
  if (bol >= text.size()) return {};
  std::size_t eol = text.find('\n', bol);
  std::string out(text.substr(bol, eol == std::string_view::npos ? std::string_view::npos : eol - bol));
  while (!out.empty() && (out.back() == '\r' || out.back() == ' ')) out.pop_back();
  return out;
}

}  // namespace

std::vector<Finding> parse_sarif(Cwe cwe, std::string_view sarif, std::string_view script_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(sarif);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseFailure, std::string("unreadable SARIF: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("runs") || !doc["runs"].is_array()) {
    throw Error(ErrorKind::ParseFailure, "SARIF log has no 'runs' array");
  }
  std::vector<Finding> out;
  try {
    for (const auto& run : doc["runs"]) {
      if (!run.contains("results")) continue;
      for (const auto& res : run["results"]) {
        Finding f;
        f.cwe = cwe;
        f.rule_id = res.value("ruleId", std::string("external"));
        std::size_t line = 1;
        std::size_t col = 1;
        if (res.contains("locations") && res["locations"].is_array() && !res["locations"].empty()) {
          const auto& loc = res["locations"][0];
          if (loc.contains("physicalLocation") && loc["physicalLocation"].contains("region")) {
            const auto& region = loc["physicalLocation"]["region"];
            line = region.value("startLine", std::size_t{1});
            col = region.value("startColumn", std::size_t{1});
          }
        }
        f.line = line;
        f.column = col;
        f.offset = offset_of(script_text, line, col);
        f.evidence = line_text(script_text, line);
        if (f.evidence.empty() && res.contains("message") && res["message"].contains("text")) {
          f.evidence = res["message"]["text"].get<std::string>();
        }
        out.push_back(std::move(f));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseFailure, std::string("malformed SARIF result: ") + e.what());
  }
  return out;
}

DetectorVerdict detect_external(Cwe cwe, const SourceScript& script, const ExternalCommand& command) {
  Workspace ws;
  fs::path input = ws.dir() / "input.py";
  fs::path output = ws.dir() / "results.sarif";
  fs::path errors = ws.dir() / "stderr.txt";
  {
    std::ofstream out(input, std::ios::binary);
    out << script.text;
    if (!out) throw Error(ErrorKind::Io, "cannot write " + input.string());
  }
  std::string cmd = replace_all(command.command, "{input}", shell_quote(input.string()));
  cmd = replace_all(cmd, "{output}", shell_quote(output.string()));
  cmd = replace_all(cmd, "{cwe}", std::to_string(cwe_number(cwe)));
  cmd = "(" + cmd + ") </dev/null >/dev/null 2>" + shell_quote(errors.string());

  int status = std::system(cmd.c_str());
  int code = status == -1 ? -1 : (WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status));
  if (code != 0) {
    std::string err = read_file(errors);
    if (err.size() > 400) err = err.substr(0, 400);
    while (!err.empty() && (err.back() == '\n' || err.back() == ' ')) err.pop_back();
    throw ExternalToolFailure(code, err);
  }
  if (!fs::exists(output)) throw Error(ErrorKind::ParseFailure, "external analyzer wrote no result file");
  DetectorVerdict v;
  v.findings = parse_sarif(cwe, read_file(output), script.text);
  v.verdict = v.findings.empty() ? 0 : 1;
  return v;
}

}  // namespace pws
