#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ca/exec.hpp"
#include "ca/modcalc.hpp"

namespace ca {

using Rational = boost::rational<std::int64_t>;

/// F^n(M): presentation entries raised to the p^n-th power, shifts scaled.
FgModule frobenius_module(const FgModule& m, unsigned nsteps);
FreeComplex frobenius_complex(const FreeComplex& c, unsigned nsteps);

/// Verdict rule for a normalized sequence v_0..v_N (N = nmax):
///   positive      if v_N >= positive_min and |v_N - v_{N-1}| <= stability
///   zero          if |v_N| <= zero_max and |v_N / v_{N-1}| <= decay_ratio (0/0 counts)
///   inconclusive  otherwise, and always when N = 0.
struct LimitThresholds {
  Rational positive_min{3, 4};
  Rational stability{1, 4};
  Rational zero_max{1, 4};
  Rational decay_ratio{1, 2};
};

enum class LimitKind { Chi, E };
enum class LimitVerdict { Positive, Zero, Inconclusive };

struct LimitValue {
  int n = 0;
  std::int64_t raw = 0;
  Rational normalized;  // raw / p^(n * codim M)
};

struct LimitReport {
  LimitKind kind = LimitKind::Chi;
  int codim = 0;
  std::vector<LimitValue> values;
  LimitVerdict verdict = LimitVerdict::Inconclusive;
  LimitThresholds thresholds;
};

LimitVerdict classify(std::span<const LimitValue> values, const LimitThresholds& t);

struct LimitOptions {
  int nmax = -1;           // -1: 3 for p = 2, else 2
  int cutoff = 0;          // resolution cutoff (0: dim A + 1)
  bool recompute = false;  // resolve each F^n(M) from scratch instead of F^n(L)
  Exec exec = Exec::Parallel;
  LimitThresholds thresholds;
};

int default_nmax(const QuotientRing& ring);

/// chi(F^n(M), A/J) for n = 0..nmax, normalized by p^(n codim M).  Throws
/// Error(InfiniteIntersection) if l(M / JM) is infinite, Error(PdCutoff) if M
/// has no finite resolution within the cutoff.
LimitReport chi_infinity(const FgModule& m, std::span<const Poly> ideal, const LimitOptions& options = {});
/// e(x; F^n(M)) for n = 0..nmax; Error(NotSop) unless x is a sop for M.
LimitReport e_infinity(const FgModule& m, std::span<const Poly> seq, const LimitOptions& options = {});

/// The three conditions checked for a candidate sequence:
///   (a) dim M/(x_1..x_i)M = r - i, and |x| = r = dim M
///   (b) dim A/(x_1..x_i)A = d - i
///   (c) l(H_t(x; A)) finite for t >= 1
/// is_sop leaves (b) and (c) unset when (a) fails.
struct SopCertificates {
  std::optional<bool> sop_for_m;
  std::optional<bool> part_of_sop_for_a;
  std::optional<bool> higher_koszul_finite;
  bool all() const noexcept {
    return sop_for_m.value_or(false) && part_of_sop_for_a.value_or(false) && higher_koszul_finite.value_or(false);
  }
};

struct ParamSeq {
  std::vector<Poly> elements;
  SopCertificates certificates;
};

SopCertificates is_sop(std::span<const Poly> seq, const FgModule& m);

/// Searches for a sequence satisfying (a), (b), (c): variables (last to first)
/// before seeded random linear forms, then forms of degree 2, 3, ...
/// Throws Error(TriesExhausted) after max_tries candidate evaluations.
ParamSeq find_sop(const FgModule& m, std::uint64_t seed, int max_tries = 200);

/// A user-asserted prime with user-supplied lengths l(F^n(M)_p), n = 0, 1, ...
struct PrimeDatum {
  std::string name;
  std::vector<Poly> ideal;
  std::vector<std::int64_t> lengths;
};

struct AssociativityRow {
  int n = 0;
  std::int64_t engine = 0;     // e(x; F^n(M))
  std::int64_t predicted = 0;  // sum_p e(x; A/p) l(F^n(M)_p)
  bool equal = false;
};

struct AssociativityReport {
  std::vector<std::int64_t> prime_multiplicities;  // engine-verified e(x; A/p)
  std::vector<AssociativityRow> rows;
  bool all_equal() const noexcept;
};

/// Throws Error(DimMismatch) if some dim A/p differs from dim M.
AssociativityReport associativity_check(const FgModule& m, std::span<const Poly> seq,
                                        std::span<const PrimeDatum> primes, int nmax,
                                        Exec exec = Exec::Parallel);

const char* to_string(LimitKind k);
const char* to_string(LimitVerdict v);

}  // namespace ca
