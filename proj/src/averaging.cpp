#include "rearr/averaging.hpp"

#include <algorithm>

#include "rearr/errors.hpp"

namespace rearr {

CondExpResult cond_exp_full(const StepFunction& f, const IntervalPartition& b, long depth) {
  const auto pts = b.points(depth);
  const PsiTable psi(f);
  std::vector<Rational> breaks;
  std::vector<Rational> vals;
  breaks.reserve(pts.size() + 1);
  for (const auto& p : pts) breaks.push_back(p);
  for (std::size_t n = 1; n < pts.size(); ++n)
    vals.push_back((psi(pts[n - 1]) - psi(pts[n])) / (pts[n - 1] - pts[n]));
  CondExpResult out;
  if (pts.back().sign() > 0) {
    const Rational tail_mass = psi(pts.back());
    if (!tail_mass.is_zero() || f.tail_break() < pts.back()) {
      // average the unmaterialized region as one final cell
      vals.push_back(tail_mass / pts.back());
      breaks.push_back(Rational(0));
      out.tail_was_averaged = true;
    }
  }
  out.fn = StepFunction(std::move(breaks), std::move(vals));
  return out;
}

StepFunction cond_exp(const StepFunction& f, const IntervalPartition& b, long depth) {
  return cond_exp_full(f, b, depth).fn;
}

namespace {

// f restricted to (lo, hi], pulled back affinely onto (0,1]: s -> f(lo + len*s).
StepFunction cell_profile(const StepFunction& f, const Rational& lo, const Rational& hi) {
  const Rational len = hi - lo;
  std::vector<Rational> pts{Rational(1)};
  for (const auto& t : f.breaks()) {
    if (t >= hi || t <= lo) continue;
    pts.push_back((t - lo) / len);
  }
  if (pts.back().sign() > 0) pts.push_back(Rational(0));
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) vals.push_back(evaluate(f, lo + len * pts[i]));
  return StepFunction(std::move(pts), std::move(vals));
}

void require_profile_exactness(const StepFunction& f, const IntervalPartition& b, long depth,
                               const std::optional<Rational>& tol) {
  if (b.finite_at(depth)) return;
  const Rational bound = b.tail_mass(depth) * f.max_abs();
  if (!tol || bound > *tol)
    throw DepthError("perp average: truncation bound " + bound.str() + " exceeds tolerance");
}

}  // namespace

StepFunction perp_avg_profile(const StepFunction& f, const IntervalPartition& b, long depth,
                              const std::optional<Rational>& tol) {
  require_profile_exactness(f, b, depth, tol);
  const auto pts = b.points(depth);
  StepFunction acc;
  for (std::size_t n = 1; n < pts.size(); ++n) {
    const Rational beta = pts[n - 1] - pts[n];
    acc = add(acc, scale(cell_profile(f, pts[n], pts[n - 1]), beta));
  }
  return acc;
}

StepFunction perp_avg_pullback(const StepFunction& f, const IntervalPartition& b, long depth,
                               const std::optional<Rational>& tol) {
  const StepFunction g = perp_avg_profile(f, b, depth, tol);
  const auto pts = b.points(depth);
  // copy g affinely into every cell (b_n, b_{n-1}]
  std::vector<Rational> breaks{Rational(1)};
  std::vector<Rational> vals;
  for (std::size_t n = 1; n < pts.size(); ++n) {
    const Rational lo = pts[n], hi = pts[n - 1], len = hi - lo;
    // piece of g: (s_{j+1}, s_j] -> (lo + len s_{j+1}, lo + len s_j]
    for (std::size_t j = 0; j < g.pieces(); ++j) {
      breaks.push_back(lo + len * g.lower(j));
      vals.push_back(g.value(j));
    }
    if (g.tail_break().sign() > 0) {
      breaks.push_back(lo);
      vals.push_back(Rational(0));
    }
    breaks.back() = lo;  // exact cell endpoint
  }
  return StepFunction(std::move(breaks), std::move(vals));
}

StepFunction cell_dilate(const StepFunction& f, const IntervalPartition& b, long depth, const Rational& a) {
  if (a.sign() <= 0 || a > Rational(1)) throw DomainError("cell_dilate: a must be in (0,1]");
  const auto pts = b.points(depth);
  std::vector<Rational> breaks{Rational(1)};
  std::vector<Rational> vals;
  for (std::size_t n = 1; n < pts.size(); ++n) {
    const Rational lo = pts[n], hi = pts[n - 1], len = hi - lo;
    const StepFunction g = dilate(cell_profile(f, lo, hi), a);
    for (std::size_t j = 0; j < g.pieces(); ++j) {
      breaks.push_back(lo + len * g.lower(j));
      vals.push_back(g.value(j));
    }
    if (g.tail_break().sign() > 0) {
      breaks.push_back(lo);
      vals.push_back(Rational(0));
    }
    breaks.back() = lo;
  }
  if (pts.back().sign() > 0) {
    breaks.push_back(Rational(0));
    vals.push_back(Rational(0));
  }
  return StepFunction(std::move(breaks), std::move(vals));
}

std::vector<BAdicAddress> badic_refine(const IntervalPartition& b, long k, long prefix) {
  if (k < 0 || prefix < 1) throw DomainError("badic_refine: need k >= 0, prefix >= 1");
  const auto pts = b.points(prefix);
  const long cells = static_cast<long>(pts.size()) - 1;
  if (cells < 1) throw DomainError("badic_refine: partition has no materialized cells");
  std::vector<Rational> beta;
  for (long n = 1; n <= cells; ++n) beta.push_back(pts[n - 1] - pts[n]);

  std::vector<BAdicAddress> level;
  for (long i = 1; i <= std::min(prefix, cells); ++i)
    level.push_back(BAdicAddress{{i}, pts[i], pts[i - 1]});
  for (long r = 1; r <= k; ++r) {
    std::vector<BAdicAddress> next;
    next.reserve(level.size() * beta.size());
    for (const auto& cell : level) {
      // partition the cell from right to left with lengths len(cell)*beta_i
      Rational hi = cell.hi;
      for (long i = 1; i <= std::min(prefix, cells); ++i) {
        const Rational len = cell.length() * beta[static_cast<std::size_t>(i - 1)];
        BAdicAddress child;
        child.digits = cell.digits;
        child.digits.push_back(i);
        child.hi = hi;
        child.lo = hi - len;
        next.push_back(child);
        hi = child.lo;
      }
    }
    level = std::move(next);
  }
  return level;
}

BAdicPoint badic_map(const IntervalPartition& b, const Rational& t, long k, long prefix) {
  if (t.sign() <= 0 || t > Rational(1)) throw DomainError("badic_map: t must be in (0,1]");
  const auto pts = b.points(prefix);
  BAdicPoint out;
  Rational u = t;
  for (long r = 0; r <= k; ++r) {
    // cell index: u in (pts[i], pts[i-1]]
    long i = 1;
    while (static_cast<std::size_t>(i) < pts.size() && u <= pts[static_cast<std::size_t>(i)]) ++i;
    if (static_cast<std::size_t>(i) >= pts.size())
      throw DepthError("badic_map: digit beyond materialized prefix");
    const Rational lo = pts[static_cast<std::size_t>(i)], hi = pts[static_cast<std::size_t>(i - 1)];
    out.digits.push_back(i);
    u = (u - lo) / (hi - lo);
    out.iterates.push_back(u);
  }
  return out;
}

Rational badic_reconstruct(const IntervalPartition& b, const BAdicPoint& p) {
  if (p.digits.empty()) throw DomainError("badic_reconstruct: empty address");
  const auto pts = b.points(*std::max_element(p.digits.begin(), p.digits.end()));
  Rational u = p.iterates.back();
  for (std::size_t r = p.digits.size(); r-- > 0;) {
    const long i = p.digits[r];
    const Rational lo = pts[static_cast<std::size_t>(i)], hi = pts[static_cast<std::size_t>(i - 1)];
    u = lo + (hi - lo) * u;
  }
  return u;
}

BAdicCondExp cond_exp_badic(const StepFunction& f, const IntervalPartition& b, long k, long prefix) {
  const auto cells = badic_refine(b, k, prefix);
  const PsiTable psi(f);
  // cells are disjoint; assemble a step function that is the cell average on
  // each cell and 0 in the gaps
  std::vector<std::pair<Rational, Rational>> pieces;  // (lo, value) with hi = previous lo
  std::vector<BAdicAddress> sorted = cells;
  std::sort(sorted.begin(), sorted.end(),
            [](const BAdicAddress& x, const BAdicAddress& y) { return x.hi > y.hi; });
  std::vector<Rational> breaks{Rational(1)};
  std::vector<Rational> vals;
  Rational covered(0);
  for (const auto& c : sorted) {
    if (c.hi < breaks.back()) {  // gap
      vals.push_back(Rational(0));
      breaks.push_back(c.hi);
    }
    vals.push_back((psi(c.hi) - psi(c.lo)) / c.length());
    breaks.push_back(c.lo);
    covered += c.length();
  }
  if (breaks.back().sign() > 0) {
    vals.push_back(Rational(0));
    breaks.push_back(Rational(0));
  }
  return BAdicCondExp{StepFunction(std::move(breaks), std::move(vals)), covered};
}

Rational l1_error_on_cells(const StepFunction& f, const StepFunction& g,
                           const std::vector<BAdicAddress>& cells) {
  const StepFunction d = abs(subtract(f, g));
  const PsiTable psi(d);
  Rational s(0);
  for (const auto& c : cells) s += psi(c.hi) - psi(c.lo);
  return s;
}

StepFunction product_avg(const JointRealization& j) {
  if (j.weights.size() != j.functions.size() || j.weights.empty())
    throw DomainError("product_avg: weights/functions mismatch");
  Rational total(0);
  for (const auto& w : j.weights) {
    if (w.sign() <= 0) throw DomainError("product_avg: weights must be positive");
    total += w;
  }
  if (total != Rational(1)) throw DomainError("product_avg: weights must sum to 1");
  StepFunction acc;
  for (std::size_t n = 0; n < j.weights.size(); ++n)
    acc = add(acc, scale(j.functions[n], j.weights[n]));
  return acc;
}

FloorCeil floor_ceil_projections(const StepFunction& f, const IntervalPartition& b, long depth) {
  if (!f.is_nonincreasing()) throw PreconditionError("floor_ceil_projections: f must be non-increasing");
  const auto pts = b.points(depth);
  const StepFunction fs = rearrange_decreasing(f);
  const PsiTable psi(fs);
  std::vector<Rational> fl_breaks{Rational(1)}, fl_vals;
  std::vector<Rational> ce_breaks{Rational(1)}, ce_vals;
  for (std::size_t n = 1; n < pts.size(); ++n) {
    fl_vals.push_back(evaluate(f, pts[n - 1]));
    fl_breaks.push_back(pts[n]);
    ce_vals.push_back(pts[n].sign() > 0 ? psi(pts[n]) / pts[n] : fs.value_near_zero());
    ce_breaks.push_back(pts[n]);
  }
  return FloorCeil{StepFunction(std::move(fl_breaks), std::move(fl_vals)),
                   StepFunction(std::move(ce_breaks), std::move(ce_vals))};
}

}  // namespace rearr
