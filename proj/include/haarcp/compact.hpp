#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "haarcp/cp.hpp"
#include "haarcp/group.hpp"
#include "haarcp/rational.hpp"

namespace haarcp {

/// Square integer matrix with exact entries.
class IntMatrix {
public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
  IntMatrix(std::size_t dim, std::vector<BigInt> entries) : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim * dim)
      throw Error(ErrorKind::RankMismatch, "expected " + std::to_string(dim * dim) + " entries");
  }

  static IntMatrix identity(std::size_t dim) {
    IntMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      m(i, i) = 1;
    return m;
  }

  std::size_t dim() const { return dim_; }
  BigInt &operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const BigInt &operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  friend IntMatrix operator*(const IntMatrix &x, const IntMatrix &y) {
    IntMatrix r(x.dim_);
    for (std::size_t i = 0; i < x.dim_; ++i)
      for (std::size_t k = 0; k < x.dim_; ++k) {
        if (x(i, k) == 0)
          continue;
        for (std::size_t j = 0; j < x.dim_; ++j)
          r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend IntMatrix operator-(const IntMatrix &x, const IntMatrix &y) {
    IntMatrix r(x.dim_);
    for (std::size_t i = 0; i < r.a_.size(); ++i)
      r.a_[i] = x.a_[i] - y.a_[i];
    return r;
  }
  friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

  bool is_zero() const {
    for (const auto &v : a_)
      if (v != 0)
        return false;
    return true;
  }

  /// Bareiss fraction-free elimination; exact for integer entries.
  BigInt determinant() const {
    if (dim_ == 0)
      return 1;
    std::vector<BigInt> m = a_;
    const std::size_t n = dim_;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m[k * n + k] == 0) {
        std::size_t p = k + 1;
        while (p < n && m[p * n + k] == 0)
          ++p;
        if (p == n)
          return 0;
        for (std::size_t j = 0; j < n; ++j)
          std::swap(m[k * n + j], m[p * n + j]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
      prev = m[k * n + k];
    }
    return sign * m[(n - 1) * n + (n - 1)];
  }

  const std::vector<BigInt> &entries() const { return a_; }

private:
  std::size_t dim_ = 0;
  std::vector<BigInt> a_;
};

/// Rank of a rows x cols integer matrix (row-major), by fraction-free
/// Gaussian elimination.
inline std::size_t integer_rank(std::vector<BigInt> m, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p * cols + c] == 0)
      ++p;
    if (p == rows)
      continue;
    for (std::size_t j = 0; j < cols; ++j)
      std::swap(m[rank * cols + j], m[p * cols + j]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      BigInt f = m[i * cols + c], piv = m[rank * cols + c];
      if (f == 0)
        continue;
      for (std::size_t j = 0; j < cols; ++j)
        m[i * cols + j] = m[i * cols + j] * piv - m[rank * cols + j] * f;
    }
    ++rank;
  }
  return rank;
}

/// Unvalidated model description: matrices are given for some elements of Q
/// (usually a generating set), as d*d row-major integers.
struct RawModel {
  std::size_t torus_rank = 0;
  FiniteGroup acting_group;
  std::vector<std::pair<Index, std::vector<BigInt>>> matrices;
  FiniteGroup extra_factor;
};

/// (T^d : Q) x L, with q in Q acting on the torus by the unimodular matrix M_q.
/// Multiplication: (a, q, l)(b, r, m) = (a + M_q b, qr, lm).
class CompactModel {
public:
  std::size_t torus_rank() const { return d_; }
  const FiniteGroup &acting_group() const { return q_; }
  const FiniteGroup &extra_factor() const { return l_; }
  const IntMatrix &action(Index q) const { return action_[q]; }

  /// Complete the generator action to all of Q and check it is a
  /// homomorphism into GL(d, Z).
  friend CompactModel validate_model(const RawModel &raw);

private:
  CompactModel(std::size_t d, FiniteGroup q, std::vector<IntMatrix> action, FiniteGroup l)
      : d_(d), q_(std::move(q)), action_(std::move(action)), l_(std::move(l)) {}

  std::size_t d_;
  FiniteGroup q_;
  std::vector<IntMatrix> action_;
  FiniteGroup l_;
};

inline CompactModel validate_model(const RawModel &raw) {
  const std::size_t d = raw.torus_rank;
  const FiniteGroup &q = raw.acting_group;
  std::vector<Index> gens;
  std::vector<IntMatrix> images;
  for (const auto &[idx, flat] : raw.matrices) {
    if (idx >= q.order())
      throw Error(ErrorKind::IndexOutOfRange,
                  "matrix given for element " + std::to_string(idx) + " of a group of order " +
                      std::to_string(q.order()));
    if (flat.size() != d * d)
      throw Error(ErrorKind::RankMismatch, "matrix for element " + std::to_string(idx) +
                                               " has " + std::to_string(flat.size()) +
                                               " entries, torus rank " + std::to_string(d));
    IntMatrix m(d, flat);
    BigInt det = m.determinant();
    if (det != 1 && det != -1)
      throw Error(ErrorKind::NotUnimodular, "matrix for element " + std::to_string(idx) +
                                                " has determinant " + det.str());
    gens.push_back(idx);
    images.push_back(std::move(m));
  }

  // Word evaluation along the Cayley graph: M_{x g} = M_x M_g.
  std::vector<IntMatrix> action(q.order());
  std::vector<bool> known(q.order());
  action[q.identity()] = IntMatrix::identity(d);
  known[q.identity()] = true;
  std::vector<Index> queue{q.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Index x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Index y = q.mul(x, gens[k]);
      IntMatrix m = action[x] * images[k];
      if (!known[y]) {
        action[y] = std::move(m);
        known[y] = true;
        queue.push_back(y);
      } else if (!(action[y] == m)) {
        throw Error(ErrorKind::NotAHomomorphism,
                    "action conflicts at element " + std::to_string(y));
      }
    }
  }
  if (queue.size() != q.order())
    throw Error(ErrorKind::IncompleteAction, "given matrices do not generate the acting group");

  for (Index a = 0; a < q.order(); ++a)
    for (Index b = 0; b < q.order(); ++b)
      if (!(action[q.mul(a, b)] == action[a] * action[b]))
        throw Error(ErrorKind::NotAHomomorphism,
                    "M(" + std::to_string(a) + "*" + std::to_string(b) + ") != M(a) M(b)");

  return CompactModel(d, q, std::move(action), raw.extra_factor);
}

/// The FC-center of (T^d : Q) x L is T^d x K x L with K = {q : M_q = I}.
///
/// The class of (a, q, l) contains (a + (I - M_q) b, q, l') for every b in
/// T^d. The image of T^d under the integer matrix I - M_q is a subtorus of
/// dimension rank(I - M_q), so the class is finite iff M_q = I. The torus is
/// a central direct factor of the FC-center and does not change its cp, so
/// K x L is a finite group with the same commuting probability.
struct FcDescription {
  std::vector<Index> kernel_indices;
  FiniteGroup finite_shadow; // K x L
  std::size_t index;         // |G : FC(G)| = |Q : K|
};

inline FcDescription fc_center(const CompactModel &model) {
  const FiniteGroup &q = model.acting_group();
  const IntMatrix id = IntMatrix::identity(model.torus_rank());
  std::vector<Index> kernel;
  for (Index x = 0; x < q.order(); ++x)
    if (model.action(x) == id)
      kernel.push_back(x);
  Subgroup k = Subgroup::from_members_unchecked(q, kernel);
  FiniteGroup shadow = direct_product(subgroup_as_group(q, k).group, model.extra_factor());
  shadow.set_name("FC-shadow");
  return {std::move(kernel), std::move(shadow), q.order() / k.size()};
}

/// Haar measure of {(a, b) in T^d x T^d : (I - M_r) a = (I - M_q) b mod 1}.
///
/// The set is the kernel of the continuous homomorphism
/// (a, b) -> (I - M_r) a - (I - M_q) b from T^2d onto a subtorus of dimension
/// rank[I - M_r | M_q - I]. A proper closed subgroup of positive codimension
/// has measure 0, so the measure is 1 when the rank is 0 and 0 otherwise.
inline Rational torus_commutation_measure(const CompactModel &model, Index q, Index r) {
  const std::size_t d = model.torus_rank();
  if (d == 0)
    return 1;
  const IntMatrix id = IntMatrix::identity(d);
  const IntMatrix left = id - model.action(r);
  const IntMatrix right = model.action(q) - id;
  std::vector<BigInt> block(d * 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      block[i * 2 * d + j] = left(i, j);
      block[i * 2 * d + d + j] = right(i, j);
    }
  return integer_rank(std::move(block), d, 2 * d) == 0 ? 1 : 0;
}

/// cp by direct decomposition of the Haar measure over Q x Q:
///   cp = cp(L) * (1/|Q|^2) * sum over commuting (q, r) of the torus measure.
/// Does not use the FC-center.
inline Rational cp_semianalytic(const CompactModel &model) {
  const FiniteGroup &q = model.acting_group();
  Rational total = 0;
  for (Index a = 0; a < q.order(); ++a)
    for (Index b = 0; b < q.order(); ++b)
      if (q.commute(a, b))
        total += torus_commutation_measure(model, a, b);
  const std::uint64_t n = q.order();
  return total / Rational(BigInt(n * n), 1) * cp_pair_count(model.extra_factor());
}

/// cp(FC shadow) / |G : FC(G)|^2. The index is finite for every model
/// (it divides |Q|), so the infinite-index convention never applies here.
inline Rational cp_theorem1(const CompactModel &model) {
  FcDescription fc = fc_center(model);
  const std::uint64_t idx = fc.index;
  return cp_pair_count(fc.finite_shadow) / Rational(BigInt(idx * idx), 1);
}

/// SplitMix64: fixed-increment 64-bit generator, identical on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = -n % n; // 2^64 mod n
    while (true) {
      std::uint64_t x = next();
      if (x >= limit)
        return x % n;
    }
  }

  /// Uniform 53-bit numerator u, the torus coordinate being u / 2^53.
  std::uint64_t fraction53() { return next() >> 11; }

private:
  std::uint64_t state_;
};

struct MonteCarloEstimate {
  double estimate;
  double standard_error;
  std::uint64_t hits;
  std::uint64_t samples;
};

/// Seed of worker w: the first output of SplitMix64(seed ^ (w + 1) * 0xD1B54A32D192ED03).
inline std::uint64_t worker_seed(std::uint64_t seed, unsigned worker) {
  return SplitMix64(seed ^ ((worker + 1ull) * 0xD1B54A32D192ED03ull)).next();
}

/// Monte Carlo estimate of cp from Haar-random pairs.
///
/// Each sample draws, in this order: q, r in Q; l, m in L; a, b in T^d as
/// 53-bit dyadic fractions. The pair commutes iff qr = rq, lm = ml and
/// (I - M_r) a = (I - M_q) b mod 1; the torus condition is evaluated exactly
/// in arithmetic mod 2^53. Returns the hit rate and its binomial standard
/// error. Deterministic for fixed (seed, workers).
inline MonteCarloEstimate cp_monte_carlo(const CompactModel &model, std::uint64_t samples,
                                         std::uint64_t seed, unsigned workers = 1) {
  if (samples == 0)
    throw Error(ErrorKind::ZeroSamples, "at least one sample is required");
  if (workers == 0)
    workers = 1;
  const FiniteGroup &q = model.acting_group();
  const FiniteGroup &l = model.extra_factor();
  const std::size_t d = model.torus_rank();
  constexpr std::uint64_t kMask = (std::uint64_t(1) << 53) - 1;

  // (I - M_q) reduced mod 2^64; exact mod 2^53 after masking.
  const BigInt two64 = BigInt(1) << 64;
  std::vector<std::vector<std::uint64_t>> defect(q.order(), std::vector<std::uint64_t>(d * d));
  std::vector<bool> trivial(q.order());
  const IntMatrix id = IntMatrix::identity(d);
  for (Index x = 0; x < q.order(); ++x) {
    IntMatrix m = id - model.action(x);
    trivial[x] = m.is_zero();
    for (std::size_t i = 0; i < d * d; ++i) {
      BigInt v = m.entries()[i] % two64;
      if (v < 0)
        v += two64;
      defect[x][i] = static_cast<std::uint64_t>(v);
    }
  }

  auto run = [&](std::uint64_t count, std::uint64_t wseed) {
    SplitMix64 rng(wseed);
    std::vector<std::uint64_t> a(d), b(d);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      auto x = static_cast<Index>(rng.below(q.order()));
      auto y = static_cast<Index>(rng.below(q.order()));
      auto u = static_cast<Index>(rng.below(l.order()));
      auto v = static_cast<Index>(rng.below(l.order()));
      for (std::size_t i = 0; i < d; ++i)
        a[i] = rng.fraction53();
      for (std::size_t i = 0; i < d; ++i)
        b[i] = rng.fraction53();
      if (!q.commute(x, y) || !l.commute(u, v))
        continue;
      bool torus = true;
      if (!(trivial[x] && trivial[y])) {
        for (std::size_t i = 0; i < d && torus; ++i) {
          std::uint64_t res = 0;
          for (std::size_t j = 0; j < d; ++j)
            res += defect[y][i * d + j] * a[j] - defect[x][i * d + j] * b[j];
          torus = (res & kMask) == 0;
        }
      }
      hits += torus ? 1 : 0;
    }
    return hits;
  };

  std::vector<std::uint64_t> hits(workers);
  if (workers == 1) {
    hits[0] = run(samples, worker_seed(seed, 0));
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      std::uint64_t share = samples / workers + (w < samples % workers ? 1 : 0);
      pool.emplace_back([&, w, share] { hits[w] = run(share, worker_seed(seed, w)); });
    }
    for (auto &t : pool)
      t.join();
  }
  std::uint64_t total = 0;
  for (auto h : hits)
    total += h;
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), total, samples};
}

} // namespace haarcp
