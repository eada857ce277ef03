#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "haarcp/error.hpp"

namespace haarcp {

/// Permutation of the points 1..degree, stored 0-based.
///
/// Products compose left to right: x^(p*q) = (x^p)^q. Permutations of
/// different degree are compared and multiplied as if padded with fixed
/// points.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size());
    for (auto x : images_) {
      if (x >= images_.size() || seen[x])
        throw Error(ErrorKind::NotAGroup, "image list is not a permutation");
      seen[x] = true;
    }
    trim();
  }

  std::size_t degree() const { return images_.size(); }

  /// Image of a 0-based point.
  std::uint32_t operator[](std::uint32_t point) const {
    return point < images_.size() ? images_[point] : point;
  }

  bool is_identity() const { return images_.empty(); }

  friend Permutation operator*(const Permutation &p, const Permutation &q) {
    Permutation r;
    std::size_t n = std::max(p.degree(), q.degree());
    r.images_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
      r.images_[i] = q[p[i]];
    r.trim();
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::uint32_t i = 0; i < images_.size(); ++i)
      r.images_[images_[i]] = i;
    return r;
  }

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &a, const Permutation &b) {
    return a.images_ <=> b.images_;
  }

  /// Disjoint-cycle notation on 1-based points, "()" for the identity.
  std::string cycles() const {
    std::string out;
    std::vector<bool> done(images_.size());
    for (std::uint32_t i = 0; i < images_.size(); ++i) {
      if (done[i] || images_[i] == i)
        continue;
      out += '(';
      std::uint32_t j = i;
      bool first = true;
      while (!done[j]) {
        done[j] = true;
        if (!first)
          out += ' ';
        out += std::to_string(j + 1);
        first = false;
        j = images_[j];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  /// Parses "(1 2 3)(4 5)". Points are positive integers; commas are
  /// accepted as separators too. Cycles are multiplied left to right.
  static Permutation parse(std::string_view text) {
    Permutation result;
    std::size_t pos = 0;
    auto skip_space = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    };
    skip_space();
    if (pos == text.size())
      throw ParseError(0, "empty permutation");
    while (true) {
      skip_space();
      if (pos == text.size())
        break;
      if (text[pos] != '(')
        throw ParseError(0, "expected '(' in cycle notation");
      ++pos;
      std::vector<std::uint32_t> cycle;
      bool closed = false;
      while (pos < text.size()) {
        skip_space();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          closed = true;
          break;
        }
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        if (start == pos)
          throw ParseError(0, "unexpected character in cycle");
        unsigned long point = std::stoul(std::string(text.substr(start, pos - start)));
        if (point == 0)
          throw ParseError(0, "points are numbered from 1");
        cycle.push_back(static_cast<std::uint32_t>(point - 1));
      }
      if (!closed)
        throw ParseError(0, "unterminated cycle");
      result = result * from_cycle(cycle);
    }
    return result;
  }

  static Permutation from_cycle(const std::vector<std::uint32_t> &cycle) {
    std::uint32_t n = 0;
    for (auto x : cycle)
      n = std::max(n, x + 1);
    Permutation p;
    p.images_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
      p.images_[i] = i;
    std::vector<bool> seen(n);
    for (auto x : cycle) {
      if (seen[x])
        throw ParseError(0, "point repeated within a cycle");
      seen[x] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      p.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
    p.trim();
    return p;
  }

private:
  void trim() {
    while (!images_.empty() && images_.back() == images_.size() - 1)
      images_.pop_back();
  }

  std::vector<std::uint32_t> images_;
};

} // namespace haarcp
