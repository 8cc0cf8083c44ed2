#pragma once

// Game families with closed-form equilibria: the prime-block imitation games,
// the beta_n imitation games, their constant-sum versions, padding, permutation
// games and the 2x2 closed form.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nashrand/equilibria.hpp"
#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"
#include "nashrand/game.hpp"
#include "nashrand/permutation.hpp"
#include "nashrand/recurrence.hpp"
#include "nashrand/strategy.hpp"

namespace nashrand {

/// The first k primes, by an incremental sieve.
inline std::vector<unsigned long> first_primes(std::size_t k) {
  std::vector<unsigned long> primes;
  std::size_t limit = 16;
  while (primes.size() < k) {
    limit *= 2;
    std::vector<char> composite(limit + 1, 0);
    primes.clear();
    for (std::size_t i = 2; i <= limit && primes.size() < k; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::size_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
  }
  return primes;
}

/// (k+1) x (k+1) binary matrix with zeros exactly where i = j+1 (mod k+1).
inline IntMatrix block_matrix(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::kUnsupportedDimension, "block size must be >= 1");
  IntMatrix m(k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j) m(i, j) = i == (j + 1) % (k + 1) ? 0 : 1;
  return m;
}

/// The all-ones matrix minus m.
inline IntMatrix complement(const IntMatrix& m) {
  return IntMatrix::filled(m.size(), 1) - m;
}

// ---------------------------------------------------------------- prime block

struct PrimeBlockLayout {
  std::vector<unsigned long> primes;
  std::vector<std::size_t> offsets;  // first row of each block
  std::size_t dimension = 0;
};

inline PrimeBlockLayout prime_block_layout(std::size_t num_primes) {
  if (num_primes < 1) {
    throw Error(ErrorKind::kUnsupportedDimension, "need at least one prime");
  }
  PrimeBlockLayout l;
  l.primes = first_primes(num_primes);
  std::size_t off = 0;
  for (unsigned long p : l.primes) {
    l.offsets.push_back(off);
    off += p + 1;
  }
  l.dimension = off + 1;
  return l;
}

/// Block k (size p_k + 1) sits on rows off..off+p_k and columns shifted one to
/// the right; the last row carries a single 1 in the first column.
inline IntMatrix prime_block_matrix(std::size_t num_primes) {
  const PrimeBlockLayout l = prime_block_layout(num_primes);
  IntMatrix b(l.dimension);
  for (std::size_t k = 0; k < l.primes.size(); ++k) {
    const IntMatrix blk = block_matrix(l.primes[k]);
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = 0; j < blk.size(); ++j) b(l.offsets[k] + i, l.offsets[k] + 1 + j) = blk(i, j);
  }
  b(l.dimension - 1, 0) = 1;
  return b;
}

inline Game prime_block_game(std::size_t num_primes) {
  const IntMatrix b = prime_block_matrix(num_primes);
  return Game(IntMatrix::identity(b.size()), b, "primeblock");
}

struct ClosedFormNe {
  Profile profile;
  BigInteger c1;  // closed-form C(x)
};

/// x_i = 1/(p_k D) on the rows of block k and x_N = 1/D on the last row, with
/// D = n + 1 + sum_k 1/p_k; y uniform. C_1 = (n+1) prod p + sum_k prod_{l!=k} p_l.
inline ClosedFormNe prime_block_ne(std::size_t num_primes) {
  const PrimeBlockLayout l = prime_block_layout(num_primes);
  const std::size_t n = l.primes.size();
  BigRational d(static_cast<unsigned long>(n + 1));
  for (unsigned long p : l.primes) d += BigRational(1, p);
  std::vector<BigRational> x(l.dimension);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i <= l.primes[k]; ++i)
      x[l.offsets[k] + i] = 1 / (BigRational(l.primes[k]) * d);
  x[l.dimension - 1] = 1 / d;

  BigInteger product = 1;
  for (unsigned long p : l.primes) product *= p;
  BigInteger c1 = BigInteger(static_cast<unsigned long>(n + 1)) * product;
  for (unsigned long p : l.primes) c1 += product / p;
  return {Profile(canonicalize(x), MixedStrategy::uniform(l.dimension)), c1};
}

/// A (pi, tau) pair under which the prime-block matrix is symmetric: each
/// block is reversed on its rows and on its shifted columns, and the border
/// row and column trade places.
inline std::pair<Permutation, Permutation> prime_block_symmetry(std::size_t num_primes) {
  const PrimeBlockLayout l = prime_block_layout(num_primes);
  const std::size_t last = l.dimension - 1;
  std::vector<std::size_t> pi(l.dimension), tau(l.dimension);
  for (std::size_t k = 0; k < l.primes.size(); ++k) {
    const std::size_t off = l.offsets[k];
    const std::size_t p = l.primes[k];
    for (std::size_t r = off; r <= off + p; ++r) pi[r] = 2 * off + 1 + p - r;
    for (std::size_t c = off + 1; c <= off + p + 1; ++c) tau[c] = 2 * off + 1 + p - c;
  }
  pi[last] = 0;
  tau[0] = last;
  return {Permutation(std::move(pi)), Permutation(std::move(tau))};
}

// ---------------------------------------------------------------------- beta

/// n x n binary matrix with ones on the main diagonal, the diagonal above it
/// and the second diagonal below it.
inline IntMatrix tridiagonal_b(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
    if (i + 1 < n) m(i, i + 1) = 1;
    if (i >= 2) m(i, i - 2) = 1;
  }
  return m;
}

/// beta_n = (0 | B_{n-1} ; 1 | 0).
inline IntMatrix beta_matrix(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::kUnsupportedDimension, "beta_n needs n >= 2");
  const IntMatrix inner = tridiagonal_b(n - 1);
  IntMatrix m(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) m(i, j + 1) = inner(i, j);
  m(n - 1, 0) = 1;
  return m;
}

inline Game beta_game(std::size_t n) {
  return Game(IntMatrix::identity(n), beta_matrix(n), "beta");
}

struct BetaNe {
  Profile profile;
  BigInteger c1;     // C(x)
  BigInteger abs_k;  // |K(beta_n)|
  BigInteger g;      // gcd(b_n, b_{n+1})
  BigInteger abs_det;
};

inline constexpr std::size_t kBetaMinN = 8;

/// Closed-form equilibrium of (I_n, beta_n):
///   x'_{n-k} = a_k |b_n| + b_k |a_n| (k = 1..n-1),  x'_n = 2|b_n| + |a_n|,
/// y uniform. Checks C(x) = |K(beta_n)| / g_n before returning.
inline BetaNe beta_ne(std::size_t n, const RecurrenceTable& table) {
  if (n < kBetaMinN) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "closed form needs n >= 8; use the enumerator for smaller n");
  }
  if (table.upto() < n) {
    throw Error(ErrorKind::kIndexOutOfRange, "recurrence table too short");
  }
  const BigInteger abs_a = abs(table.a(n));
  const BigInteger abs_b = abs(table.b(n));
  std::vector<BigInteger> w(n);
  for (std::size_t k = 1; k < n; ++k) w[n - k - 1] = table.a(k) * abs_b + table.b(k) * abs_a;
  w[n - 1] = 2 * abs_b + abs_a;
  MixedStrategy x = MixedStrategy::from_weights(std::move(w));

  const IntMatrix beta = beta_matrix(n);
  BetaNe out{Profile(std::move(x), MixedStrategy::uniform(n)), 0, abs(cofactor_sum_fast(beta)),
             table.g(n), abs(det(beta))};
  out.c1 = complexity(out.profile.x);
  if (out.g == 0 || out.c1 * out.g != out.abs_k) {
    throw Error(ErrorKind::kHypothesisViolation,
                "C(x) = " + out.c1.get_str() + " differs from |K|/g = " + out.abs_k.get_str() +
                    "/" + out.g.get_str() + " at n = " + std::to_string(n));
  }
  return out;
}

inline BetaNe beta_ne(std::size_t n) { return beta_ne(n, RecurrenceTable(std::max<std::size_t>(n, 4))); }

// ---------------------------------------------------------------- symmetry

/// (B^T)_i = pi(B_{tau(i)}) for every row i, i.e. B_{j,i} = B_{tau(i), pi(j)}.
inline bool is_pi_tau_symmetric(const IntMatrix& b, const Permutation& pi,
                                const Permutation& tau) {
  const std::size_t n = b.size();
  if (pi.size() != n || tau.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "permutation size differs from matrix size");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b(j, i) != b(tau(i), pi(j))) return false;
  return true;
}

/// (all-ones - B, B) for an imitation game (I_n, B) whose B is
/// (pi, tau)-symmetric, invertible and has K(B) != det B.
inline Game constant_sum_transform(const Game& g, const Permutation& pi, const Permutation& tau,
                                   std::optional<std::string> tag = std::nullopt) {
  const std::size_t n = g.size();
  if (g.a() != IntMatrix::identity(n)) {
    throw Error(ErrorKind::kHypothesisViolation, "constant-sum transform needs A = I_n");
  }
  if (!is_pi_tau_symmetric(g.b(), pi, tau)) {
    throw Error(ErrorKind::kSymmetryViolation, "B is not (pi, tau)-symmetric");
  }
  const BigInteger d = det(g.b());
  if (d == 0) throw Error(ErrorKind::kHypothesisViolation, "det B = 0");
  if (cofactor_sum_fast(g.b()) == d) throw Error(ErrorKind::kHypothesisViolation, "K(B) = det B");
  if (!tag) tag = "constsum-" + g.family_tag().value_or("game");
  return Game(complement(g.b()), g.b(), std::move(tag), BigInteger(1));
}

/// Equilibrium (x, pi^{-1}(x)) of the constant-sum version, given the row
/// strategy x of the imitation game's equilibrium.
inline Profile constant_sum_ne(const MixedStrategy& x, const Permutation& pi) {
  return Profile(x, MixedStrategy::from_weights(pi.inverse().apply(x.numerators())));
}

inline Game constsum_beta_game(std::size_t n) {
  const auto r = Permutation::reversal(n);
  return constant_sum_transform(beta_game(n), r, r, "constsum-beta");
}

inline Game constsum_prime_block_game(std::size_t num_primes) {
  const auto [pi, tau] = prime_block_symmetry(num_primes);
  return constant_sum_transform(prime_block_game(num_primes), pi, tau, "constsum-primeblock");
}

/// The 8 x 8 imitation game whose unique equilibrium has C = (34, 8).
inline Game example1_game() { return Game(IntMatrix::identity(8), beta_matrix(8), "example1"); }

/// Its constant-sum version, with C = (34, 34).
inline Game example2_game() {
  const auto r = Permutation::reversal(8);
  return constant_sum_transform(beta_game(8), r, r, "example2");
}

// ----------------------------------------------------------------- padding

/// A' = (A | 1 ; 0 | 1), B' = (B | 0 ; 1 | 0). Requires no all-zero column in
/// A and no all-zero row in B. Stays constant-sum exactly when u = 1.
inline Game pad_game(const Game& g) {
  const std::size_t n = g.size();
  for (std::size_t c = 0; c < n; ++c) {
    bool all_zero = true;
    for (std::size_t r = 0; r < n; ++r) all_zero = all_zero && g.a()(r, c) == 0;
    if (all_zero) throw Error(ErrorKind::kHypothesisViolation, "A has an all-zero column");
  }
  for (std::size_t r = 0; r < n; ++r) {
    bool all_zero = true;
    for (std::size_t c = 0; c < n; ++c) all_zero = all_zero && g.b()(r, c) == 0;
    if (all_zero) throw Error(ErrorKind::kHypothesisViolation, "B has an all-zero row");
  }
  IntMatrix a(n + 1), b(n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      a(r, c) = g.a()(r, c);
      b(r, c) = g.b()(r, c);
    }
    a(r, n) = 1;
  }
  a(n, n) = 1;
  for (std::size_t c = 0; c < n; ++c) b(n, c) = 1;
  std::optional<BigInteger> u;
  if (g.constant_sum() && *g.constant_sum() == 1) u = BigInteger(1);
  return Game(std::move(a), std::move(b), "padded-" + g.family_tag().value_or("game"), u);
}

// ------------------------------------------------------ permutation games

struct PermutationGame {
  Game game;
  BigInteger complexity;  // common C_1 = C_2
};

/// (P_pi, P_tau); both minimal complexities equal the shortest cycle of
/// pi^{-1} tau.
inline PermutationGame permutation_game(const Permutation& pi, const Permutation& tau) {
  if (pi.size() != tau.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "pi and tau differ in size");
  }
  if (pi.size() == 0) throw Error(ErrorKind::kUnsupportedDimension, "empty permutation");
  const std::size_t c = pi.inverse().compose(tau).min_cycle_length();
  return {Game(permutation_matrix(pi), permutation_matrix(tau), "permutation"),
          BigInteger(static_cast<unsigned long>(c))};
}

// ---------------------------------------------------------------- 2 x 2

/// Closed-form (C_1, C_2) of a 2x2 game without pure equilibria, after
/// swapping rows so that A_11 > A_21.
inline std::pair<BigInteger, BigInteger> two_by_two_complexities(const Game& g) {
  if (g.size() != 2) {
    throw Error(ErrorKind::kUnsupportedDimension, "closed form applies to 2x2 games only");
  }
  if (!pure_nash(g).empty()) {
    throw Error(ErrorKind::kHasPureNE, "game has a pure equilibrium; C_1 = C_2 = 1");
  }
  IntMatrix a = g.a(), b = g.b();
  if (a(0, 0) < a(1, 0)) {
    for (std::size_t c = 0; c < 2; ++c) {
      std::swap(a(0, c), a(1, c));
      std::swap(b(0, c), b(1, c));
    }
  }
  const BigInteger d1 = b(0, 1) - b(0, 0), d2 = b(1, 0) - b(1, 1);
  const BigInteger e1 = a(0, 0) - a(1, 0), e2 = a(1, 1) - a(0, 1);
  return {(d1 + d2) / gcd_big(d1, d2), (e1 + e2) / gcd_big(e1, e2)};
}

}  // namespace nashrand
