#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "haarcp/builtins.hpp"
#include "haarcp/compact.hpp"
#include "haarcp/group.hpp"

namespace haarcp {

// Group spec files (line oriented, '#' starts a comment line):
//
//   perm (1 2 3)(4 5)        one generator per line; the group is the closure
//   table 4                  explicit Cayley table, followed by 4 rows
//   product a.group b.group  direct product of two other specs
//
// Compact model files:
//
//   torus_rank 2
//   acting_group cyclic 4
//   matrix 1 0 -1 1 0        element index, then d*d entries row-major
//   extra_factor Q8

namespace detail {

inline std::vector<std::string> split_ws(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;)
    out.push_back(tok);
  return out;
}

inline std::string strip(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_unsigned(const std::string &tok, unsigned long &out) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    return false;
  try {
    out = std::stoul(tok);
  } catch (const std::exception &) {
    return false;
  }
  return true;
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(0, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace detail

inline FiniteGroup parse_group_file(const std::filesystem::path &path,
                                    std::size_t cap = kDefaultClosureCap);

/// Resolves one group from `tokens` starting at `pos`, advancing `pos`.
/// Accepts "cyclic n", "dihedral n", "dicyclic n", "symmetric n",
/// "alternating n", "quaternion8", a corpus name such as "A5xC6", or a path
/// (relative paths are tried against `base` first).
inline FiniteGroup resolve_group(const std::vector<std::string> &tokens, std::size_t &pos,
                                 const std::filesystem::path &base = {},
                                 std::size_t cap = kDefaultClosureCap) {
  if (pos >= tokens.size())
    throw ParseError(0, "missing group");
  const std::string &head = tokens[pos];
  static const char *const kFamilies[] = {"cyclic", "dihedral", "dicyclic", "symmetric",
                                          "alternating"};
  for (const char *family : kFamilies) {
    if (head != family)
      continue;
    unsigned long n = 0;
    if (pos + 1 >= tokens.size() || !detail::parse_unsigned(tokens[pos + 1], n) || n == 0 ||
        n > 100000)
      throw ParseError(0, std::string(family) + " needs a positive integer argument");
    pos += 2;
    auto k = static_cast<unsigned>(n);
    std::string f = family;
    if (f == "cyclic") {
      if (n > cap)
        throw Error(ErrorKind::ClosureExceedsCap, "order " + std::to_string(n));
      return cyclic(k);
    }
    if (f == "dihedral") {
      if (2 * n > cap)
        throw Error(ErrorKind::ClosureExceedsCap, "order " + std::to_string(2 * n));
      return dihedral(k);
    }
    if (f == "dicyclic") {
      if (4 * n > cap)
        throw Error(ErrorKind::ClosureExceedsCap, "order " + std::to_string(4 * n));
      return dicyclic(k);
    }
    if (f == "symmetric")
      return symmetric(k, cap);
    return alternating(k, cap);
  }
  ++pos;
  if (head == "quaternion8")
    return quaternion8();
  if (head == "trivial")
    return FiniteGroup{};
  std::filesystem::path p(head);
  if (!base.empty() && p.is_relative() && std::filesystem::is_regular_file(base / p))
    return parse_group_file(base / p, cap);
  if (std::filesystem::is_regular_file(p))
    return parse_group_file(p, cap);
  if (auto g = builtin_group(head))
    return *g;
  throw ParseError(0, "unknown group '" + head + "'");
}

inline FiniteGroup resolve_group(const std::string &text, const std::filesystem::path &base = {},
                                 std::size_t cap = kDefaultClosureCap) {
  auto tokens = detail::split_ws(text);
  std::size_t pos = 0;
  FiniteGroup g = resolve_group(tokens, pos, base, cap);
  if (pos != tokens.size())
    throw ParseError(0, "trailing input after group: '" + tokens[pos] + "'");
  return g;
}

/// Parses the group spec format. `base` resolves relative paths in
/// `product` lines.
inline FiniteGroup parse_group_spec(const std::string &text, const std::filesystem::path &base = {},
                                    std::size_t cap = kDefaultClosureCap, std::string name = {}) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
      lines.push_back(line);
  }
  std::vector<Permutation> perms;
  std::optional<FiniteGroup> result;
  std::size_t perm_line = 0;
  auto rethrow = [](std::size_t line, const Error &e) -> ParseError {
    std::string what = e.what();
    const std::string prefix = "ParseError: ";
    if (what.rfind(prefix, 0) == 0)
      what = what.substr(prefix.size());
    return ParseError(line, what);
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string line = detail::strip(lines[i]);
    if (line.empty() || line[0] == '#')
      continue;
    auto tokens = detail::split_ws(line);
    const std::string &kw = tokens[0];
    if (kw == "perm") {
      if (result)
        throw ParseError(lineno, "perm after table/product");
      try {
        perms.push_back(Permutation::parse(line.substr(4)));
      } catch (const ParseError &e) {
        throw rethrow(lineno, e);
      }
      perm_line = lineno;
    } else if (kw == "table") {
      unsigned long n = 0;
      if (result || !perms.empty())
        throw ParseError(lineno, "only one group definition per spec");
      if (tokens.size() != 2 || !detail::parse_unsigned(tokens[1], n) || n == 0)
        throw ParseError(lineno, "expected 'table <n>'");
      if (n > cap)
        throw Error(ErrorKind::ClosureExceedsCap, "table order " + std::to_string(n));
      std::vector<Index> table;
      table.reserve(n * n);
      for (unsigned long r = 0; r < n; ++r) {
        ++i;
        while (i < lines.size() && (detail::strip(lines[i]).empty() ||
                                    detail::strip(lines[i])[0] == '#'))
          ++i;
        if (i >= lines.size())
          throw ParseError(lines.size(), "table ended after " + std::to_string(r) + " rows");
        auto row = detail::split_ws(lines[i]);
        if (row.size() != n)
          throw ParseError(i + 1, "expected " + std::to_string(n) + " entries");
        for (const auto &tok : row) {
          unsigned long v = 0;
          if (!detail::parse_unsigned(tok, v) || v >= n)
            throw ParseError(i + 1, "bad table entry '" + tok + "'");
          table.push_back(static_cast<Index>(v));
        }
      }
      try {
        result = FiniteGroup::from_table(n, std::move(table), name);
      } catch (const Error &e) {
        throw ParseError(lineno, e.what());
      }
    } else if (kw == "product") {
      if (result || !perms.empty())
        throw ParseError(lineno, "only one group definition per spec");
      if (tokens.size() < 3)
        throw ParseError(lineno, "expected 'product <a> <b>'");
      std::vector<std::string> rest(tokens.begin() + 1, tokens.end());
      std::size_t pos = 0;
      try {
        FiniteGroup a = resolve_group(rest, pos, base, cap);
        FiniteGroup b = resolve_group(rest, pos, base, cap);
        if (pos != rest.size())
          throw ParseError(0, "trailing input");
        result = direct_product(a, b, cap);
        result->set_name(a.name() + "x" + b.name());
      } catch (const ParseError &e) {
        throw rethrow(lineno, e);
      }
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!perms.empty()) {
    try {
      result = close_generators(perms, cap, name);
    } catch (const Error &e) {
      if (e.kind() == ErrorKind::ClosureExceedsCap)
        throw;
      throw ParseError(perm_line, e.what());
    }
  }
  if (!result)
    throw ParseError(0, "spec defines no group");
  if (!name.empty())
    result->set_name(name);
  return *result;
}

inline FiniteGroup parse_group_file(const std::filesystem::path &path, std::size_t cap) {
  return parse_group_spec(detail::read_file(path), path.parent_path(), cap, path.stem().string());
}

/// Parses the compact model format and validates the result.
inline CompactModel parse_model_spec(const std::string &text, const std::filesystem::path &base = {},
                                     std::size_t cap = kDefaultClosureCap) {
  RawModel raw;
  bool have_rank = false;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> matrix_lines;
  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    line = detail::strip(line);
    if (line.empty() || line[0] == '#')
      continue;
    auto tokens = detail::split_ws(line);
    const std::string kw = tokens[0];
    std::vector<std::string> rest(tokens.begin() + 1, tokens.end());
    auto group_arg = [&]() {
      std::size_t pos = 0;
      try {
        FiniteGroup g = resolve_group(rest, pos, base, cap);
        if (pos != rest.size())
          throw ParseError(0, "trailing input");
        return g;
      } catch (const ParseError &e) {
        std::string what = e.what();
        throw ParseError(lineno, what.substr(what.find(": ") + 2));
      }
    };
    if (kw == "torus_rank") {
      unsigned long d = 0;
      if (rest.size() != 1 || !detail::parse_unsigned(rest[0], d) || d > 64)
        throw ParseError(lineno, "expected 'torus_rank <d>' with 0 <= d <= 64");
      raw.torus_rank = d;
      have_rank = true;
    } else if (kw == "acting_group") {
      raw.acting_group = group_arg();
    } else if (kw == "extra_factor") {
      raw.extra_factor = group_arg();
    } else if (kw == "matrix") {
      if (rest.empty())
        throw ParseError(lineno, "expected 'matrix <element> <entries...>'");
      matrix_lines.emplace_back(lineno, rest);
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!have_rank)
    throw ParseError(0, "missing 'torus_rank'");
  for (const auto &[ln, rest] : matrix_lines) {
    unsigned long idx = 0;
    if (!detail::parse_unsigned(rest[0], idx))
      throw ParseError(ln, "bad element index '" + rest[0] + "'");
    std::vector<BigInt> entries;
    for (std::size_t k = 1; k < rest.size(); ++k) {
      const std::string &tok = rest[k];
      std::string digits = tok[0] == '-' || tok[0] == '+' ? tok.substr(1) : tok;
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(ln, "bad matrix entry '" + tok + "'");
      entries.emplace_back(tok[0] == '+' ? digits : tok);
    }
    raw.matrices.emplace_back(static_cast<Index>(idx), std::move(entries));
  }
  return validate_model(raw);
}

inline CompactModel parse_model_file(const std::filesystem::path &path,
                                     std::size_t cap = kDefaultClosureCap) {
  return parse_model_spec(detail::read_file(path), path.parent_path(), cap);
}

} // namespace haarcp
