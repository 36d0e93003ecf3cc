#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rearr/rational.hpp"
#include "rearr/step_function.hpp"

namespace rearr {

// Interval partition of (0,1] into cells (b_n, b_{n-1}], b_0 = 1 > b_1 > ...
// Explicit partitions are finite lists (possibly ending at 0); generated forms
// (geometric, dyadic-exponent) materialize to a prefix plus exact tail mass.
class IntervalPartition {
 public:
  // the trivial one-cell partition {1, 0}
  IntervalPartition() : gen_(Explicit{{Rational(1), Rational(0)}}) {}

  struct Explicit {
    std::vector<Rational> points;  // strictly decreasing, points[0] == 1, back >= 0
  };
  struct Geometric {
    Rational p;  // b_n = p^n, 0 < p < 1
  };
  struct DyadicExp {
    std::function<long(long)> exponent;  // m_n, strictly increasing, m_0 = 0
    std::string rule_name;               // for serialization ("square", "linear", "explicit")
    std::vector<long> explicit_exponents;
  };

  static IntervalPartition explicit_points(std::vector<Rational> points);
  static IntervalPartition geometric(const Rational& p);
  static IntervalPartition dyadic_exp(std::function<long(long)> exponent, std::string rule_name);
  static IntervalPartition dyadic_exp_list(std::vector<long> exponents);
  // b_n = 2^-n (the partition D).
  static IntervalPartition dyadic();
  // Cluster family: k points 2^-k (1 + i/k), i = k..1, per scale k = 1..clusters.
  static IntervalPartition clustered(long clusters);

  bool is_explicit() const { return std::holds_alternative<Explicit>(gen_); }
  bool is_geometric() const { return std::holds_alternative<Geometric>(gen_); }
  bool is_dyadic_exp() const { return std::holds_alternative<DyadicExp>(gen_); }
  const Explicit* as_explicit() const { return std::get_if<Explicit>(&gen_); }
  const Geometric* as_geometric() const { return std::get_if<Geometric>(&gen_); }
  const DyadicExp* as_dyadic_exp() const { return std::get_if<DyadicExp>(&gen_); }

  // Points b_0..b_m where m = min(depth, size for explicit). Always starts at 1.
  std::vector<Rational> points(long depth) const;
  // True when points(depth) already reaches 0 (exact finite partition).
  bool finite_at(long depth) const;
  // b_depth (0 for exhausted explicit partitions): the unmaterialized mass.
  Rational tail_mass(long depth) const;

 private:
  explicit IntervalPartition(std::variant<Explicit, Geometric, DyadicExp> g) : gen_(std::move(g)) {}
  std::variant<Explicit, Geometric, DyadicExp> gen_;
};

// Cell lengths beta_n = b_{n-1} - b_n of a materialized prefix, plus tail.
struct StochasticVector {
  std::vector<Rational> lengths;
  Rational tail;  // 1 - sum(lengths)
};

StochasticVector stochastic_vector(const IntervalPartition& b, long depth);

// Monotone rearrangement B*: explicit partition whose lengths are the sorted
// (non-increasing) prefix lengths, with the tail mass appended as the final
// length (reaching 0 exactly). Throws TailDominates when the tail mass is not
// smaller than every prefix length and positive.
IntervalPartition monotone_rearrangement(const IntervalPartition& b, long depth);

// Snap each materialized point to the largest dyadic 2^-k <= point, dedupe.
IntervalPartition dyadic_projection(const IntervalPartition& b, long depth);

// max over 1 <= n <= depth of b_{n-1}/b_n.
Rational verifying_ratio(const IntervalPartition& b, long depth);

// Cor. 6.7: refine each cell B_k into [beta_k/b_k] equal pieces, where
// [v] = floor(v) + 1. The result is explicit and verifying.
IntervalPartition finer_verifying(const IntervalPartition& b, long depth);

// omega(k) = max over n <= depth-k of b_{n+k}/b_n.
Rational omega(const IntervalPartition& b, long k, long depth);

// Number of materialized points (n = 0..depth) in [2^-k, 2^-k+1).
long q_count(const IntervalPartition& b, long k, long depth);

enum class Refinement { Yes, No, Indeterminate };

// Whether every materialized point of b is a point of a (a finer than b).
Refinement is_refinement(const IntervalPartition& a, const IntervalPartition& b, long depth);

}  // namespace rearr
