#include "rearr/partition.hpp"

#include <algorithm>

#include "rearr/errors.hpp"

namespace rearr {

IntervalPartition IntervalPartition::explicit_points(std::vector<Rational> points) {
  if (points.empty() || points.front() != Rational(1))
    throw DomainError("IntervalPartition: first point must be 1");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] < points[i - 1]))
      throw DomainError("IntervalPartition: points must be strictly decreasing");
  if (points.back().sign() < 0) throw DomainError("IntervalPartition: points must be >= 0");
  return IntervalPartition(Explicit{std::move(points)});
}

IntervalPartition IntervalPartition::geometric(const Rational& p) {
  if (p.sign() <= 0 || p >= Rational(1)) throw DomainError("IntervalPartition: geometric ratio must be in (0,1)");
  return IntervalPartition(Geometric{p});
}

IntervalPartition IntervalPartition::dyadic_exp(std::function<long(long)> exponent, std::string rule_name) {
  if (exponent(0) != 0) throw DomainError("IntervalPartition: dyadic exponents need m_0 = 0");
  return IntervalPartition(DyadicExp{std::move(exponent), std::move(rule_name), {}});
}

IntervalPartition IntervalPartition::dyadic_exp_list(std::vector<long> exponents) {
  if (exponents.empty() || exponents.front() != 0)
    throw DomainError("IntervalPartition: dyadic exponents need m_0 = 0");
  for (std::size_t i = 1; i < exponents.size(); ++i)
    if (exponents[i] <= exponents[i - 1])
      throw DomainError("IntervalPartition: dyadic exponents must be strictly increasing");
  auto ex = exponents;
  DyadicExp d;
  d.exponent = [ex](long n) {
    if (n < 0 || static_cast<std::size_t>(n) >= ex.size())
      throw DepthError("IntervalPartition: exponent index beyond explicit list");
    return ex[static_cast<std::size_t>(n)];
  };
  d.rule_name = "explicit";
  d.explicit_exponents = std::move(exponents);
  return IntervalPartition(std::move(d));
}

IntervalPartition IntervalPartition::dyadic() {
  return dyadic_exp([](long n) { return n; }, "linear");
}

IntervalPartition IntervalPartition::clustered(long clusters) {
  if (clusters < 1) throw DomainError("IntervalPartition: clusters must be >= 1");
  std::vector<Rational> pts;
  for (long k = 1; k <= clusters; ++k)
    for (long i = k; i >= 1; --i) {
      Rational p = Rational::pow2(-k) * (Rational(1) + Rational(i, k));
      if (pts.empty() || p < pts.back()) pts.push_back(p);
    }
  return explicit_points(std::move(pts));
}

std::vector<Rational> IntervalPartition::points(long depth) const {
  if (depth < 0) throw DomainError("IntervalPartition: negative depth");
  if (const auto* e = as_explicit()) {
    long m = std::min<long>(depth, static_cast<long>(e->points.size()) - 1);
    return {e->points.begin(), e->points.begin() + m + 1};
  }
  std::vector<Rational> pts;
  pts.reserve(static_cast<std::size_t>(depth) + 1);
  if (const auto* g = as_geometric()) {
    Rational b(1);
    pts.push_back(b);
    for (long n = 1; n <= depth; ++n) {
      b *= g->p;
      pts.push_back(b);
    }
    return pts;
  }
  const auto& d = std::get<DyadicExp>(gen_);
  long prev = -1;
  for (long n = 0; n <= depth; ++n) {
    long m = d.exponent(n);
    if (m <= prev) throw DomainError("IntervalPartition: exponents not strictly increasing");
    prev = m;
    pts.push_back(Rational::pow2(-m));
  }
  return pts;
}

bool IntervalPartition::finite_at(long depth) const {
  if (const auto* e = as_explicit())
    return static_cast<long>(e->points.size()) - 1 <= depth && e->points.back().is_zero();
  return false;
}

Rational IntervalPartition::tail_mass(long depth) const {
  return points(depth).back();
}

StochasticVector stochastic_vector(const IntervalPartition& b, long depth) {
  const auto pts = b.points(depth);
  StochasticVector sv;
  for (std::size_t i = 1; i < pts.size(); ++i) sv.lengths.push_back(pts[i - 1] - pts[i]);
  sv.tail = pts.back();
  return sv;
}

IntervalPartition monotone_rearrangement(const IntervalPartition& b, long depth) {
  StochasticVector sv = stochastic_vector(b, depth);
  std::sort(sv.lengths.begin(), sv.lengths.end(), [](const Rational& x, const Rational& y) { return x > y; });
  if (sv.tail.sign() > 0) {
    if (sv.tail > sv.lengths.back())
      throw TailDominates("monotone_rearrangement: tail mass larger than smallest prefix length");
    sv.lengths.push_back(sv.tail);
  }
  std::vector<Rational> pts{Rational(1)};
  Rational pos(1);
  for (const auto& len : sv.lengths) {
    pos -= len;
    pts.push_back(pos);
  }
  return IntervalPartition::explicit_points(std::move(pts));
}

IntervalPartition dyadic_projection(const IntervalPartition& b, long depth) {
  const auto pts = b.points(depth);
  std::vector<long> exps;
  for (const auto& p : pts) {
    if (p.sign() <= 0) break;
    long e = -p.floor_log2();  // 2^-e <= p, largest such dyadic
    if (e < 0) e = 0;
    if (exps.empty() || e > exps.back()) exps.push_back(e);
  }
  return IntervalPartition::dyadic_exp_list(std::move(exps));
}

Rational verifying_ratio(const IntervalPartition& b, long depth) {
  if (depth < 1) throw DomainError("verifying_ratio: depth must be >= 1");
  const auto pts = b.points(depth);
  Rational m(0);
  for (std::size_t n = 1; n < pts.size(); ++n) {
    if (pts[n].sign() == 0) break;  // final cell of a finite partition has no ratio
    m = max(m, pts[n - 1] / pts[n]);
  }
  return m;
}

IntervalPartition finer_verifying(const IntervalPartition& b, long depth) {
  const auto pts = b.points(depth);
  std::vector<Rational> out{Rational(1)};
  for (std::size_t n = 1; n < pts.size(); ++n) {
    const Rational beta = pts[n - 1] - pts[n];
    long parts = 1;
    if (pts[n].sign() > 0) {
      // [v] = floor(v) + 1 so that beta/[v] < b_n
      const Rational v = beta / pts[n];
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), v.num().get_mpz_t(), v.den().get_mpz_t());
      if (!fl.fits_slong_p()) throw DepthError("finer_verifying: subdivision count overflow");
      parts = fl.get_si() + 1;
    }
    const Rational piece = beta / Rational(parts);
    for (long j = 1; j <= parts; ++j) out.push_back(pts[n - 1] - piece * Rational(j));
    out.back() = pts[n];  // exact endpoint
  }
  return IntervalPartition::explicit_points(std::move(out));
}

Rational omega(const IntervalPartition& b, long k, long depth) {
  if (k < 1 || depth <= k) throw DomainError("omega: need depth > k >= 1");
  const auto pts = b.points(depth);
  Rational m(0);
  for (std::size_t n = 0; n + static_cast<std::size_t>(k) < pts.size(); ++n) {
    if (pts[n + static_cast<std::size_t>(k)].sign() == 0) break;
    m = max(m, pts[n + static_cast<std::size_t>(k)] / pts[n]);
  }
  return m;
}

long q_count(const IntervalPartition& b, long k, long depth) {
  if (k < 1) throw DomainError("q_count: k must be >= 1");
  const Rational lo = Rational::pow2(-k), hi = Rational::pow2(-k + 1);
  long c = 0;
  for (const auto& p : b.points(depth))
    if (p >= lo && p < hi) ++c;  // left-closed dyadic cell
  return c;
}

Refinement is_refinement(const IntervalPartition& a, const IntervalPartition& b, long depth) {
  const auto bpts = b.points(depth);
  Rational b_min(1);
  for (const auto& p : bpts)
    if (p.sign() > 0) b_min = p;
  // explicit partitions are finite data: use them whole; deepen a generated
  // partition until it covers b's materialized range
  long a_depth = depth;
  std::vector<Rational> apts = a.points(a.is_explicit() ? (1L << 30) : a_depth);
  if (!a.is_explicit()) {
    while (apts.back() > b_min && a_depth < depth * 64) {
      a_depth *= 2;
      apts = a.points(a_depth);
    }
  }
  std::sort(apts.begin(), apts.end());
  bool indeterminate = false;
  const Rational a_min = apts.front();
  for (const auto& p : bpts) {
    if (p < a_min && p.sign() > 0) {
      indeterminate = true;  // beyond a's materialized range
      continue;
    }
    if (!std::binary_search(apts.begin(), apts.end(), p)) return Refinement::No;
  }
  return indeterminate ? Refinement::Indeterminate : Refinement::Yes;
}

}  // namespace rearr
