#include "majorize/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "majorize/error.hpp"

namespace majorize::io {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Calls fn(line_number, trimmed_line) for every non-blank, non-comment line.
template <class Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    fn(line_no, line);
  }
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_vector(std::string_view text) {
  std::vector<double> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || end != line.data() + line.size()) {
      parse_fail(line_no, "not a decimal number: '" + std::string(line) + "'");
    }
    if (!std::isfinite(v)) parse_fail(line_no, "non-finite value");
    out.push_back(v);
  });
  if (out.empty()) throw Error(ErrorCode::parse, "empty vector");
  return out;
}

std::vector<double> read_vector_file(const std::string& path) {
  return parse_vector(read_file(path));
}

Tree parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::vector<std::string> lone;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    std::istringstream ss{std::string(line)};
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (tokens.size() == 2) {
      edges.emplace_back(tokens[0], tokens[1]);
    } else if (tokens.size() == 1) {
      lone.push_back(tokens[0]);
    } else {
      parse_fail(line_no, "expected two labels per edge");
    }
  });
  if (edges.empty() && lone.size() == 1) return Tree::single(lone.front());
  if (!lone.empty()) {
    throw Error(ErrorCode::parse, "single-label line '" + lone.front() +
                                      "' is only valid for a one-vertex tree");
  }
  if (edges.empty()) throw Error(ErrorCode::parse, "empty edge list");
  return Tree::from_edges(edges);
}

Tree read_edge_list_file(const std::string& path) {
  return parse_edge_list(read_file(path));
}

SpiderMeasure parse_measure_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("measure JSON: ") + e.what());
  }
  auto fail = [](const std::string& msg) -> void {
    throw Error(ErrorCode::parse, "measure JSON: " + msg);
  };
  if (!doc.is_object()) fail("top level must be an object");
  if (!doc.contains("K") || !doc["K"].is_number_integer() || doc["K"].get<long long>() < 1) {
    fail("\"K\" must be a positive integer");
  }
  if (!doc.contains("atoms") || !doc["atoms"].is_array()) fail("\"atoms\" must be an array");
  auto legs = doc["K"].get<std::size_t>();
  std::vector<SpiderAtom> atoms;
  for (const auto& a : doc["atoms"]) {
    if (!a.is_object() || !a.contains("leg") || !a.contains("r") || !a.contains("w") ||
        !a["leg"].is_number_integer() || !a["r"].is_number() || !a["w"].is_number()) {
      fail("each atom needs integer \"leg\" and numeric \"r\", \"w\"");
    }
    long long leg = a["leg"].get<long long>();
    if (leg < 1) fail("leg must be at least 1");
    atoms.push_back({SpiderPoint(legs, static_cast<std::size_t>(leg), a["r"].get<double>()),
                     a["w"].get<double>()});
  }
  return SpiderMeasure(legs, std::move(atoms));
}

SpiderMeasure read_measure_file(const std::string& path) {
  return parse_measure_json(read_file(path));
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_matrix_csv(const Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_real(m(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace majorize::io
