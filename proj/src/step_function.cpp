#include "rearr/step_function.hpp"

#include <algorithm>
#include <map>

#include "rearr/errors.hpp"

namespace rearr {

StepFunction::StepFunction() : breaks_{Rational(1)} {}

StepFunction::StepFunction(std::vector<Rational> breaks, std::vector<Rational> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (breaks_.empty() || breaks_.front() != Rational(1))
    throw DomainError("StepFunction: first breakpoint must be 1");
  if (values_.size() + 1 != breaks_.size())
    throw DomainError("StepFunction: need one value per piece");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i - 1]))
      throw DomainError("StepFunction: breakpoints must be strictly decreasing");
  if (breaks_.back().sign() < 0) throw DomainError("StepFunction: breakpoints must be >= 0");
  canonicalize();
}

void StepFunction::canonicalize() {
  // merge adjacent equal values
  std::vector<Rational> nb{breaks_.front()};
  std::vector<Rational> nv;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!nv.empty() && nv.back() == values_[i]) {
      nb.back() = breaks_[i + 1];
    } else {
      nv.push_back(values_[i]);
      nb.push_back(breaks_[i + 1]);
    }
  }
  // absorb a trailing zero value into the implicit zero region
  while (!nv.empty() && nv.back().is_zero()) {
    nv.pop_back();
    nb.pop_back();
  }
  breaks_ = std::move(nb);
  values_ = std::move(nv);
}

StepFunction StepFunction::constant(const Rational& c) {
  if (c.is_zero()) return StepFunction();
  return StepFunction({Rational(1), Rational(0)}, {c});
}

StepFunction StepFunction::box(const Rational& c, const Rational& b) {
  if (b.sign() <= 0 || b > Rational(1)) throw DomainError("box: b must be in (0,1]");
  if (c.is_zero()) return StepFunction();
  if (b == Rational(1)) return constant(c);
  return StepFunction({Rational(1), b, Rational(0)}, {Rational(0), c});
}

bool StepFunction::is_nonnegative() const {
  for (const auto& v : values_)
    if (v.sign() < 0) return false;
  return true;
}

bool StepFunction::is_nonincreasing() const {
  // implicit zero region near 0 must dominate the innermost explicit value
  if (tail_break().sign() > 0 && !values_.empty() && values_.back().sign() > 0) return false;
  return is_nonincreasing_on_support();
}

bool StepFunction::is_nonincreasing_on_support() const {
  // non-increasing in t: values grow toward 0 (later pieces >= earlier)
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] < values_[i - 1]) return false;
  return true;
}

Rational StepFunction::max_abs() const {
  Rational m(0);
  for (const auto& v : values_) m = max(m, v.abs());
  return m;
}

Rational StepFunction::value_near_zero() const {
  if (tail_break().sign() > 0 || values_.empty()) return Rational(0);
  return values_.back();
}

Rational evaluate(const StepFunction& f, const Rational& t) {
  if (t.sign() <= 0 || t > Rational(1)) throw DomainError("evaluate: t must be in (0,1]");
  if (t <= f.tail_break()) return Rational(0);
  // piece i covers (breaks[i+1], breaks[i]]
  const auto& b = f.breaks();
  std::size_t lo = 0, hi = f.pieces();  // t in (b[i+1], b[i]] for some i in [lo,hi)
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (t <= b[mid]) lo = mid; else hi = mid;
  }
  return f.value(lo);
}

Rational integral(const StepFunction& f) {
  Rational s(0);
  for (std::size_t i = 0; i < f.pieces(); ++i) s += f.value(i) * (f.upper(i) - f.lower(i));
  return s;
}

Rational prefix_integral(const StepFunction& f, const Rational& t) {
  if (t.sign() < 0 || t > Rational(1)) throw DomainError("prefix_integral: t must be in [0,1]");
  Rational s(0);
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const Rational lo = f.lower(i), hi = f.upper(i);
    if (t <= lo) continue;
    s += f.value(i) * (min(t, hi) - lo);
  }
  return s;
}

StepFunction rearrange_decreasing(const StepFunction& f) {
  // (value,length) pairs of |f|, sorted ascending, laid out from 1 toward 0
  std::map<Rational, Rational> mass;  // |value| -> total length
  for (std::size_t i = 0; i < f.pieces(); ++i)
    mass[f.value(i).abs()] += f.upper(i) - f.lower(i);
  if (f.tail_break().sign() > 0) mass[Rational(0)] += f.tail_break();
  std::vector<Rational> breaks{Rational(1)};
  std::vector<Rational> values;
  Rational pos(1);
  for (const auto& [v, len] : mass) {  // ascending by value
    pos -= len;
    values.push_back(v);
    breaks.push_back(pos);
  }
  // pos is exactly 0
  return StepFunction(std::move(breaks), std::move(values));
}

StepFunction dilate(const StepFunction& f, const Rational& s) {
  if (s.sign() <= 0) throw DomainError("dilate: s must be positive");
  const Rational one(1);
  std::vector<Rational> pts{one};
  for (const auto& b : f.breaks()) {
    Rational p = b / s;
    if (p > one) p = one;
    if (p.sign() > 0 && p < pts.back()) pts.push_back(p);
  }
  if (pts.back().sign() > 0) pts.push_back(Rational(0));
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational st = s * pts[i];  // right endpoint of the piece, image point
    vals.push_back(st <= one ? evaluate(f, st) : Rational(0));
  }
  // drop synthetic zero tail piece if the image is genuinely 0 there
  return StepFunction(std::move(pts), std::move(vals));
}

std::vector<Rational> merged_breakpoints(const StepFunction& f, const StepFunction& g) {
  std::vector<Rational> pts;
  pts.reserve(f.breaks().size() + g.breaks().size());
  pts.insert(pts.end(), f.breaks().begin(), f.breaks().end());
  pts.insert(pts.end(), g.breaks().begin(), g.breaks().end());
  std::sort(pts.begin(), pts.end(), [](const Rational& a, const Rational& b) { return a > b; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

static StepFunction combine(const StepFunction& f, const StepFunction& g,
                            const std::function<Rational(const Rational&, const Rational&)>& op) {
  std::vector<Rational> pts = merged_breakpoints(f, g);
  if (pts.back().sign() > 0) pts.push_back(Rational(0));
  std::vector<Rational> vals;
  auto at = [](const StepFunction& h, const Rational& t) {
    return t <= h.tail_break() ? Rational(0) : evaluate(h, t);
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) vals.push_back(op(at(f, pts[i]), at(g, pts[i])));
  return StepFunction(std::move(pts), std::move(vals));
}

StepFunction add(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return a + b; });
}

StepFunction subtract(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return a - b; });
}

StepFunction scale(const StepFunction& f, const Rational& c) {
  if (c.is_zero()) return StepFunction();
  std::vector<Rational> vals;
  vals.reserve(f.pieces());
  for (const auto& v : f.values()) vals.push_back(v * c);
  return StepFunction(f.breaks(), std::move(vals));
}

StepFunction abs(const StepFunction& f) {
  std::vector<Rational> vals;
  vals.reserve(f.pieces());
  for (const auto& v : f.values()) vals.push_back(v.abs());
  return StepFunction(f.breaks(), std::move(vals));
}

bool step_leq(const StepFunction& f, const StepFunction& g) {
  const StepFunction d = subtract(g, f);
  for (const auto& v : d.values())
    if (v.sign() < 0) return false;
  return true;
}

Rational l1_distance(const StepFunction& f, const StepFunction& g) {
  return integral(abs(subtract(f, g)));
}

Rational double_star(const StepFunction& f, const Rational& t) {
  if (t.sign() <= 0 || t > Rational(1)) throw DomainError("double_star: t must be in (0,1]");
  return prefix_integral(rearrange_decreasing(f), t) / t;
}

Rational double_star_limit_at_zero(const StepFunction& f) {
  return rearrange_decreasing(f).value_near_zero();
}

StepFunction double_star_fn(const StepFunction& f, const std::vector<Rational>& grid) {
  if (grid.empty() || grid.front() != Rational(1)) throw DomainError("double_star_fn: grid must start at 1");
  const StepFunction fs = rearrange_decreasing(f);
  const PsiTable psi(fs);
  std::vector<Rational> breaks = grid;
  std::vector<Rational> vals;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i].sign() <= 0) throw DomainError("double_star_fn: grid points must be positive");
    vals.push_back(psi(grid[i]) / grid[i]);
  }
  // value on the innermost cell (grid.back(), grid[M-1]] uses f**(grid.back());
  // below grid.back() extend with the limit value so the sample stays a step fn
  breaks.push_back(Rational(0));
  vals.push_back(fs.value_near_zero());
  return StepFunction(std::move(breaks), std::move(vals));
}

bool majorizes(const StepFunction& x, const StepFunction& y) {
  const StepFunction xs = rearrange_decreasing(x), ys = rearrange_decreasing(y);
  const PsiTable px(xs), py(ys);
  for (const auto& t : merged_breakpoints(xs, ys)) {
    if (t.sign() <= 0) continue;
    if (py(t) > px(t)) return false;
  }
  return true;
}

bool equimeasurable(const StepFunction& f, const StepFunction& g) {
  return rearrange_decreasing(f) == rearrange_decreasing(g);
}

PsiTable::PsiTable(const StepFunction& f) {
  pts_.push_back(Rational(0));
  cum_.push_back(Rational(0));
  vals_.push_back(Rational(0));
  if (f.tail_break().sign() > 0) {
    pts_.push_back(f.tail_break());
    cum_.push_back(Rational(0));
    vals_.push_back(Rational(0));
  }
  for (std::size_t k = f.pieces(); k-- > 0;) {
    const Rational len = f.upper(k) - f.lower(k);
    pts_.push_back(f.upper(k));
    cum_.push_back(cum_.back() + f.value(k) * len);
    vals_.push_back(f.value(k));
  }
}

Rational PsiTable::operator()(const Rational& t) const {
  if (t.sign() < 0 || t > Rational(1)) throw DomainError("PsiTable: t must be in [0,1]");
  // find largest i with pts_[i] <= t
  std::size_t lo = 0, hi = pts_.size();
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (pts_[mid] <= t) lo = mid; else hi = mid;
  }
  Rational r = cum_[lo];
  if (lo + 1 < pts_.size() && t > pts_[lo]) r += vals_[lo + 1] * (t - pts_[lo]);
  return r;
}

// --------------------------------------------------------------------------

StepFunction DyadicFamily::materialize(long depth) const {
  if (depth < 1) throw DomainError("DyadicFamily: depth must be >= 1");
  std::vector<Rational> breaks{Rational(1)};
  std::vector<Rational> vals;
  for (long n = 1; n <= depth; ++n) {
    breaks.push_back(Rational::pow2(-n));
    vals.push_back(value(n));
  }
  return StepFunction(std::move(breaks), std::move(vals));
}

StepFunction DyadicFamily::materialize_extended(long depth) const {
  if (depth < 1) throw DomainError("DyadicFamily: depth must be >= 1");
  std::vector<Rational> breaks{Rational(1)};
  std::vector<Rational> vals;
  for (long n = 1; n < depth; ++n) {
    breaks.push_back(Rational::pow2(-n));
    vals.push_back(value(n));
  }
  breaks.push_back(Rational(0));
  vals.push_back(value(depth));
  return StepFunction(std::move(breaks), std::move(vals));
}

Rational DyadicFamily::psi_dyadic(long n, long depth) const {
  if (exact_psi_dyadic) return exact_psi_dyadic(n);
  Rational s(0);
  for (long k = n + 1; k <= depth; ++k) s += value(k) * Rational::pow2(-k);
  if (exact_tail) return s + exact_tail(depth);
  return s;  // truncated lower bound
}

DyadicFamily DyadicFamily::constant(const Rational& c) {
  DyadicFamily d;
  d.value = [c](long) { return c; };
  d.exact_tail = [c](long n) { return c * Rational::pow2(-n); };
  d.tail_bound = d.exact_tail;
  return d;
}

DyadicFamily DyadicFamily::geometric(const Rational& first, const Rational& ratio) {
  DyadicFamily d;
  d.value = [first, ratio](long n) { return first * ratio.pow(n - 1); };
  if (ratio < Rational(2)) {
    // sum_{k>n} first r^{k-1} 2^-k = first (r/2)^n / (2 - r)
    const Rational half_ratio = ratio / Rational(2);
    d.exact_tail = [first, half_ratio, ratio](long n) {
      return first * half_ratio.pow(n) / (Rational(2) - ratio);
    };
    d.tail_bound = d.exact_tail;
  }
  return d;
}

DyadicFamily DyadicFamily::pow2_over_square() {
  DyadicFamily d;
  d.value = [](long n) { return Rational::pow2(n) / Rational(n * n); };
  // no closed tail; bound sum_{k>n} 1/k^2 < 1/n
  d.tail_bound = [](long n) { return Rational(1, n); };
  return d;
}

DyadicFamily DyadicFamily::linear(const Rational& h) {
  DyadicFamily d;
  d.value = [h](long n) { return h * Rational(n); };
  // sum_{k>n} k 2^-k = (n+2) 2^-n
  d.exact_tail = [h](long n) { return h * Rational(n + 2) * Rational::pow2(-n); };
  d.tail_bound = d.exact_tail;
  return d;
}

DyadicFamily DyadicFamily::explicit_values(std::vector<Rational> values) {
  DyadicFamily d;
  d.value = [values = std::move(values)](long n) {
    if (n < 1 || static_cast<std::size_t>(n) > values.size())
      throw DepthError("DyadicFamily: rank beyond explicit values");
    return values[static_cast<std::size_t>(n - 1)];
  };
  return d;
}

}  // namespace rearr
