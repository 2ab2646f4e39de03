#include "ncc/spec_file.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "ncc/pgroup_lab.hpp"

namespace ncc {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string s;
  for (std::size_t n = 1; std::getline(in, s); ++n) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    std::size_t first = s.find_first_not_of(" \t");
    if (first == std::string::npos || s[first] == '#') continue;
    out.push_back({n, s});
  }
  return out;
}

/// Whitespace-separated tokens with their 1-based columns.
std::vector<std::pair<std::string, std::size_t>> tokens(const std::string& s) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.emplace_back(s.substr(i, j - i), i + 1);
    i = j;
  }
  return out;
}

std::uint64_t parse_number(const std::string& tok, std::size_t line, std::size_t column) {
  if (tok.empty() || tok.size() > 18) throw ParseError(line, column, "expected a number, got '" + tok + "'");
  for (std::size_t i = 0; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError(line, column + i, "expected a digit, got '" + std::string(1, tok[i]) + "'");
  return std::stoull(tok);
}

Permutation parse_cycles(const Line& line, std::size_t degree) {
  Permutation perm(degree);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<char> used(degree, 0);
  const std::string& s = line.text;
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') throw ParseError(line.number, i + 1, "expected '(' to open a cycle");
    any = true;
    ++i;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i >= s.size()) throw ParseError(line.number, i + 1, "unterminated cycle");
      if (s[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw ParseError(line.number, i + 1, "expected a point or ')'");
      const std::uint64_t point = parse_number(s.substr(i, j - i), line.number, i + 1);
      if (point >= degree)
        throw SemanticError("line " + std::to_string(line.number) + " is not a permutation of degree " +
                                std::to_string(degree),
                            "point " + std::to_string(point) + " at column " + std::to_string(i + 1));
      if (used[point])
        throw SemanticError("line " + std::to_string(line.number) + " is not a permutation",
                            "point " + std::to_string(point) + " repeated at column " + std::to_string(i + 1));
      used[point] = 1;
      cycle.push_back(static_cast<std::uint32_t>(point));
      i = j;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) perm[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  if (!any) throw ParseError(line.number, 1, "expected a generator in cycle notation");
  return perm;
}

}  // namespace

std::string format_cycles(const Permutation& perm) {
  std::string out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == start) continue;
    out += "(";
    std::size_t x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = 1;
      out += (first ? "" : " ") + std::to_string(x);
      first = false;
      x = perm[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

GroupSpecFile GroupSpecFile::parse(const std::string& text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty group definition");
  const Line& head = lines.front();
  GroupSpecFile f;
  const std::size_t lead = head.text.find_first_not_of(" \t");
  const std::string head_text = head.text.substr(lead);

  if (head_text.rfind("quat:", 0) == 0) {
    if (lines.size() > 1) throw ParseError(lines[1].number, 1, "unexpected content after quotient spec");
    f.format = Format::quat;
    std::string spec = head_text;
    while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back()))) spec.pop_back();
    try {
      f.quat = QuotientGroupSpec::parse(spec);
    } catch (const std::invalid_argument& e) {
      throw SemanticError("invalid quotient spec", e.what());
    }
    return f;
  }

  auto toks = tokens(head.text);
  const std::string& kind = toks[0].first;
  if (kind == "perm" || kind == "table") {
    if (toks.size() != 2) throw ParseError(head.number, toks[0].second, "'" + kind + "' takes one number");
    f.size = parse_number(toks[1].first, head.number, toks[1].second);
    if (f.size == 0) throw ParseError(head.number, toks[1].second, "size must be positive");
    if (f.size > limits().order_cap && kind == "table")
      throw SemanticError("table too large", "order " + std::to_string(f.size));
  }
  if (kind == "perm") {
    f.format = Format::perm;
    for (std::size_t i = 1; i < lines.size(); ++i) f.generators.push_back(parse_cycles(lines[i], f.size));
    return f;
  }
  if (kind == "table") {
    f.format = Format::table;
    if (lines.size() - 1 != f.size)
      throw ParseError(lines.back().number, 1,
                       "expected " + std::to_string(f.size) + " table rows, got " + std::to_string(lines.size() - 1));
    for (std::size_t r = 1; r < lines.size(); ++r) {
      auto row = tokens(lines[r].text);
      if (row.size() != f.size)
        throw ParseError(lines[r].number, row.empty() ? 1 : row.back().second,
                         "expected " + std::to_string(f.size) + " entries, got " + std::to_string(row.size()));
      for (const auto& [tok, col] : row) {
        const std::uint64_t v = parse_number(tok, lines[r].number, col);
        if (v >= f.size)
          throw SemanticError("table entry out of range",
                              "value " + tok + " at line " + std::to_string(lines[r].number) + ", column " +
                                  std::to_string(col));
        f.table.push_back(static_cast<Elem>(v));
      }
    }
    return f;
  }
  if (kind == "construct") {
    f.format = Format::construct;
    if (lines.size() > 1) throw ParseError(lines[1].number, 1, "unexpected content after constructor");
    if (toks.size() < 2) throw ParseError(head.number, head.text.size() + 1, "expected a constructor name");
    f.constructor = toks[1].first;
    for (std::size_t i = 2; i < toks.size(); ++i)
      f.arguments.push_back(parse_number(toks[i].first, head.number, toks[i].second));
    return f;
  }
  throw ParseError(head.number, lead + 1, "unknown format '" + kind + "' (expected perm, table, construct or quat:)");
}

std::string GroupSpecFile::serialize() const {
  std::ostringstream os;
  switch (format) {
    case Format::perm:
      os << "perm " << size << "\n";
      for (const Permutation& g : generators) os << format_cycles(g) << "\n";
      break;
    case Format::table:
      os << "table " << size << "\n";
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) os << (c ? " " : "") << table[r * size + c];
        os << "\n";
      }
      break;
    case Format::construct:
      os << "construct " << constructor;
      for (std::uint64_t a : arguments) os << " " << a;
      os << "\n";
      break;
    case Format::quat:
      os << quat.to_string() << "\n";
      break;
  }
  return os.str();
}

FiniteGroup GroupSpecFile::build() const {
  try {
    switch (format) {
      case Format::perm: return from_generators(size, generators, "perm" + std::to_string(size));
      case Format::table: return from_table(size, table, "table" + std::to_string(size));
      case Format::construct: return construct(constructor, arguments);
      case Format::quat: return build_quotient(quat);
    }
  } catch (const SizeError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SemanticError("input does not define a group", e.what());
  }
  throw std::logic_error("unknown format");
}

}  // namespace ncc
