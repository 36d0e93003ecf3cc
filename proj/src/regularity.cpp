#include "rearr/regularity.hpp"

#include <algorithm>

#include "rearr/errors.hpp"

namespace rearr {

QSequence QSequence::constant(long c) {
  if (c < 1) throw DomainError("QSequence: values must be >= 1");
  QSequence q;
  q.rule = [c](long) { return c; };
  q.kind = "const";
  q.params = {c};
  return q;
}

QSequence QSequence::affine(long a, long b) {
  QSequence q;
  q.rule = [a, b](long n) {
    long v = a * n + b;
    if (v < 1) throw DomainError("QSequence: affine rule dipped below 1");
    return v;
  };
  q.kind = "affine";
  q.params = {a, b};
  return q;
}

QSequence QSequence::square() {
  QSequence q;
  q.rule = [](long n) { return n * n; };
  q.kind = "square";
  return q;
}

QSequence QSequence::explicit_values(std::vector<long> values) {
  for (long v : values)
    if (v < 1) throw DomainError("QSequence: values must be >= 1");
  QSequence q;
  q.rule = [values](long n) {
    if (n < 1) throw DomainError("QSequence: index must be >= 1");
    if (static_cast<std::size_t>(n) > values.size())
      return values.back();  // continue with the last value
    return values[static_cast<std::size_t>(n - 1)];
  };
  q.kind = "explicit";
  q.params = std::move(values);
  return q;
}

bool VSequence::satisfies_gap_rule() const {
  if (v.empty() || v.front() != Rational(1)) return false;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (!(v[k] < v[k - 1])) return false;
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    if ((v[k] - v[k + 1]) * Rational(2) < v[k - 1] - v[k]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// sup f(t/2)/f(t): evaluate on the merged grid {t_i} U {2 t_i}, right endpoints.

Cert weak_reg_constant(const StepFunction& f, const std::optional<Rational>& threshold) {
  if (!f.is_nonincreasing()) throw PreconditionError("weak_reg_constant: f must be non-increasing");
  std::vector<Rational> cands;
  for (const auto& t : f.breaks()) {
    if (t.sign() > 0) cands.push_back(t);
    const Rational d = t * Rational(2);
    if (d.sign() > 0 && d <= Rational(1)) cands.push_back(d);
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  Cert out;
  out.value = Rational(1);
  for (const auto& c : cands) {
    const Rational den = evaluate(f, c);
    if (den.sign() <= 0) continue;  // outside the support
    out.value = max(out.value, evaluate(f, c / Rational(2)) / den);
    if (threshold && out.value > *threshold) {
      out.finite = false;
      return out;
    }
  }
  return out;
}

Cert weak_reg_constant(const DyadicFamily& f, long depth, const std::optional<Rational>& threshold) {
  Cert out;
  out.value = Rational(1);
  out.depth = depth;
  for (long n = 1; n <= depth; ++n) {
    const Rational an = f.value(n);
    if (an.sign() <= 0) continue;
    out.value = max(out.value, f.value(n + 1) / an);
    if (threshold && out.value > *threshold) {
      out.finite = false;
      out.depth = n;
      return out;
    }
  }
  return out;
}

// sup f**/f* for non-increasing f: attained (from the right) at piece left
// endpoints, value psi(t_i)/(t_i * v_i).
Cert reg_constant(const StepFunction& f, const std::optional<Rational>& threshold) {
  if (!f.is_nonincreasing()) throw PreconditionError("reg_constant: f must be non-increasing");
  const PsiTable psi(f);
  Cert out;
  out.value = Rational(1);
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const Rational lo = f.lower(i);
    if (lo.sign() <= 0) continue;
    if (f.value(i).sign() <= 0) continue;
    out.value = max(out.value, psi(lo) / (lo * f.value(i)));
    if (threshold && out.value > *threshold) {
      out.finite = false;
      return out;
    }
  }
  return out;
}

Cert reg_constant(const DyadicFamily& f, long depth, const std::optional<Rational>& threshold) {
  Cert out;
  out.value = Rational(1);
  out.depth = depth;
  out.lower_bound_only = !f.has_exact_psi();
  for (long m = 1; m <= depth; ++m) {
    const Rational am = f.value(m);
    if (am.sign() <= 0) continue;
    const Rational psi_m = f.psi_dyadic(m, depth);
    out.value = max(out.value, psi_m * Rational::pow2(m) / am);
    if (threshold && out.value > *threshold) {
      out.finite = false;
      out.depth = m;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Rational modular(const StepFunction& f, const StepFunction& x) {
  if (x.is_zero()) return Rational(0);
  const StepFunction fs = rearrange_decreasing(f);
  const StepFunction xs = rearrange_decreasing(x);
  if (fs.is_zero()) throw DomainError("modular: f identically zero");

  auto feasible = [&](const Rational& q) {
    return step_leq(xs, scale(dilate(fs, q.inv()), q));
  };

  std::vector<Rational> cands{Rational(1)};
  for (const auto& vx : xs.values())
    for (const auto& vf : fs.values())
      if (vf.sign() > 0 && vx.sign() > 0) cands.push_back(vx / vf);
  for (const auto& tx : xs.breaks())
    for (const auto& tf : fs.breaks()) {
      if (tf.sign() <= 0 || tx.sign() <= 0) continue;
      cands.push_back(tx / tf);
      cands.push_back(Rational(1) / tf);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  cands.erase(std::remove_if(cands.begin(), cands.end(),
                             [](const Rational& q) { return q < Rational(1); }),
              cands.end());
  if (cands.empty() || !feasible(cands.back()))
    throw DomainError("modular: no finite candidate (f has no reach over x)");
  // feasibility is monotone in q: binary search for the smallest feasible
  std::size_t lo = 0, hi = cands.size() - 1;
  if (feasible(cands[lo])) return cands[lo];
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (feasible(cands[mid]) ? hi : lo) = mid;
  }
  return cands[hi];
}

// ---------------------------------------------------------------------------

long q_psi_count(const StepFunction& f, const IntervalPartition& p, long k, long depth) {
  if (k < 1) throw DomainError("q_psi_count: k must be >= 1");
  const Rational total = integral(f);
  if (total.sign() <= 0) throw DomainError("q_psi_count: f must have positive integral");
  const PsiTable psi(f);
  const Rational lo = Rational::pow2(-k), hi = Rational::pow2(-k + 1);
  long count = 0;
  const auto pts = p.points(depth);
  for (std::size_t n = 1; n < pts.size(); ++n) {
    if (pts[n].sign() <= 0) break;
    const Rational val = psi(pts[n]) / total;
    if (val >= lo && val < hi) ++count;
  }
  return count;
}

long count_v_in_cell(const VSequence& v, long k) {
  const Rational lo = Rational::pow2(-k), hi = Rational::pow2(-k + 1);
  long count = 0;
  for (std::size_t j = 1; j < v.v.size(); ++j)
    if (v.v[j] >= lo && v.v[j] < hi) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Lemma 1.9 synthesis.

namespace {

// Points of a multi segment D_n, rules U2/U4: 2^-n (1 + 2^{-i+1}) for
// i = 1..count, with the last point moved to 2^-n (1 + 2^{-l-1}) when a finite
// single block of length l follows and q_n < l + 3.
std::vector<Rational> multi_points(long n, long q, std::optional<long> block_l) {
  std::vector<Rational> pts;
  const Rational base = Rational::pow2(-n);
  long regular = q;
  bool adjust = false;
  if (block_l && q < *block_l + 3) {
    regular = q - 1;
    adjust = true;
  }
  for (long i = 1; i <= regular; ++i) pts.push_back(base * (Rational(1) + Rational::pow2(-i + 1)));
  if (adjust) pts.push_back(base * (Rational(1) + Rational::pow2(-*block_l - 1)));
  return pts;
}

}  // namespace

Synthesis synthesize_from_q(const QSequence& q, long depth) {
  if (depth < 1) throw DomainError("synthesize_from_q: depth must be >= 1");
  std::vector<Rational> pts;  // u-points, strictly decreasing; v = {1} U pts
  const std::size_t needed = static_cast<std::size_t>(depth) + 1;  // v_0..v_depth
  bool repaired = false;

  auto have_enough = [&] { return pts.size() + 1 >= needed + 1; };  // one spare
  // single-run length starting at segment n; capped lookahead
  auto run_length = [&](long n, long cap) {
    long l = 0;
    while (l < cap && q(n + l) == 1) ++l;
    return l;
  };

  long n = 1;
  while (!have_enough()) {
    const long cap = static_cast<long>(needed) + 4;
    const long qn = q(n);
    if (qn == 1) {
      // single run starting at n (only reachable at n == 1; later runs are
      // consumed by their initial multi segment)
      const long l = run_length(n, cap);
      if (l >= cap) {
        // U1, infinite block from the start: right endpoints 2^{-i+1}
        for (long i = 1; !have_enough(); ++i) pts.push_back(Rational::pow2(-i + 1));
        break;
      }
      // finite start block followed by a multi segment: the literal U1
      // placement breaks (1.5) at the junction, so place the block points by
      // the U4 interior formula with a virtual initial segment
      repaired = true;
      for (long i = 1; i <= l; ++i)
        pts.push_back(Rational::pow2(-i) * (Rational(1) + Rational::pow2(-l + i - 1)));
      n += l;
      continue;
    }
    // multi segment at n; inspect the following single run
    const long l = run_length(n + 1, cap);
    if (l == 0) {
      for (const auto& p : multi_points(n, qn, std::nullopt)) pts.push_back(p);
      n += 1;
      continue;
    }
    if (l >= cap) {
      // U3: infinite block; geometric continuation from the last point of D_n
      const auto mp = multi_points(n, qn, std::nullopt);
      for (const auto& p : mp) pts.push_back(p);
      const Rational last = mp.back();
      for (long i = 1; !have_enough(); ++i) pts.push_back(last * Rational::pow2(-i));
      break;
    }
    // U4: finite block of length l
    for (const auto& p : multi_points(n, qn, l)) pts.push_back(p);
    for (long i = 1; i <= l; ++i)
      pts.push_back(Rational::pow2(-n - i) * (Rational(1) + Rational::pow2(-l + i - 1)));
    n += l + 1;
  }

  Synthesis out;
  out.depth = depth;
  out.junction_repaired = repaired;
  out.v.v.push_back(Rational(1));
  for (const auto& p : pts) {
    if (p == Rational(1)) continue;  // u_1^1 may coincide with v_0
    if (!(p < out.v.v.back()))
      throw Error("synthesize_from_q: generated points not strictly decreasing");
    out.v.v.push_back(p);
    if (out.v.v.size() == needed) break;
  }
  if (out.v.v.size() < needed)
    throw DepthError("synthesize_from_q: q-sequence exhausted before depth");
  if (!out.v.satisfies_gap_rule())
    throw Error("synthesize_from_q: (1.5) violated; rule placement defect");

  std::vector<Rational> a;
  for (long k = 1; k <= depth; ++k)
    a.push_back(Rational::pow2(k) * (out.v.v[static_cast<std::size_t>(k - 1)] -
                                     out.v.v[static_cast<std::size_t>(k)]));
  const auto vv = out.v.v;
  out.g = DyadicFamily::explicit_values(std::move(a));
  out.g.exact_psi_dyadic = [vv](long k) {
    if (k < 0 || static_cast<std::size_t>(k) >= vv.size())
      throw DepthError("synthesized psi: rank beyond materialized v");
    return vv[static_cast<std::size_t>(k)];
  };

  long max_rank = 0;
  for (std::size_t j = 1; j < vv.size(); ++j)
    max_rank = std::max(max_rank, -vv[j].floor_log2());
  for (long k = 1; k <= max_rank; ++k) out.realized_counts.push_back(count_v_in_cell(out.v, k));
  return out;
}

// ---------------------------------------------------------------------------

DyadicFamily envelope_weakly_regular(const DyadicFamily& f, const Rational& eps, long depth) {
  if (eps.sign() <= 0) throw DomainError("envelope_weakly_regular: eps must be positive");
  if (depth < 1) throw DomainError("envelope_weakly_regular: depth must be >= 1");
  const Rational c = Rational(2) + eps;
  // f* = sum b_n 1_{(0,2^-n]}: b_0 = a_1, b_n = a_{n+1} - a_n
  std::vector<Rational> b;
  b.push_back(f.value(1));
  for (long nn = 1; nn < depth; ++nn) {
    const Rational d = f.value(nn + 1) - f.value(nn);
    if (d.sign() < 0)
      throw PreconditionError("envelope_weakly_regular: family must be non-increasing in t");
    b.push_back(d);
  }
  if (b.front().sign() < 0) throw PreconditionError("envelope_weakly_regular: negative values");
  std::vector<Rational> g;
  for (long m = 1; m <= depth; ++m) {
    Rational s(0);
    for (long nn = 0; nn < m; ++nn) s += b[static_cast<std::size_t>(nn)];
    Rational cp = Rational(1) / c;  // c^{m-1-n} for n = m
    for (long nn = m; nn < depth; ++nn) {
      s += b[static_cast<std::size_t>(nn)] * cp;
      cp /= c;
    }
    g.push_back(s);
  }
  return DyadicFamily::explicit_values(std::move(g));
}

// ---------------------------------------------------------------------------

BmoGap bmo_gap(const StepFunction& g) {
  if (!g.is_nonincreasing()) throw PreconditionError("bmo_gap: g must be non-increasing");
  const PsiTable psi(g);
  BmoGap out{Rational(0), Rational(0)};
  for (std::size_t i = 0; i < g.pieces(); ++i) {
    const Rational lo = g.lower(i);
    if (lo.sign() <= 0) continue;
    out.gap = max(out.gap, psi(lo) / lo - g.value(i));
  }
  std::vector<Rational> cands;
  for (const auto& t : g.breaks()) {
    if (t.sign() > 0) cands.push_back(t);
    const Rational d = t * Rational(2);
    if (d.sign() > 0 && d <= Rational(1)) cands.push_back(d);
  }
  for (const auto& c : cands)
    out.companion = max(out.companion, evaluate(g, c / Rational(2)) - evaluate(g, c));
  return out;
}

BmoGap bmo_gap(const DyadicFamily& g, long depth) {
  BmoGap out{Rational(0), Rational(0)};
  for (long m = 1; m <= depth; ++m)
    out.gap = max(out.gap, g.psi_dyadic(m, depth) * Rational::pow2(m) - g.value(m));
  for (long m = 1; m < depth; ++m) out.companion = max(out.companion, g.value(m + 1) - g.value(m));
  return out;
}

}  // namespace rearr
