#include "rearr/rearrange.hpp"

#include <algorithm>
#include <map>

#include "rearr/averaging.hpp"
#include "rearr/errors.hpp"

namespace rearr {

Rational Segment::integral() const {
  Rational s(0);
  for (const auto& p : pieces) s += p.value * (p.hi - p.lo);
  return s;
}

Rational Segment::integral_on(const Rational& lo, const Rational& hi) const {
  Rational s(0);
  for (const auto& p : pieces) {
    const Rational l = max(lo, p.lo), h = min(hi, p.hi);
    if (l < h) s += p.value * (h - l);
  }
  return s;
}

Rational Segment::value_at(const Rational& t) const {
  for (const auto& p : pieces)
    if (t > p.lo && t <= p.hi) return p.value;
  throw DomainError("Segment: point outside the interval");
}

std::vector<std::pair<Rational, Rational>> Segment::mass() const {
  std::map<Rational, Rational> m;
  for (const auto& p : pieces) m[p.value] += p.hi - p.lo;
  return {m.begin(), m.end()};
}

void Segment::validate() const {
  if (pieces.empty()) throw DomainError("Segment: empty");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].lo < pieces[i].hi)) throw DomainError("Segment: degenerate piece");
    if (i > 0 && pieces[i].lo != pieces[i - 1].hi) throw DomainError("Segment: not contiguous");
  }
}

bool segments_equimeasurable(const Segment& f, const Segment& g) { return f.mass() == g.mass(); }

Segment restrict_to(const StepFunction& f, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw DomainError("restrict_to: empty interval");
  Segment s;
  std::vector<Rational> cuts{lo};
  for (std::size_t i = f.breaks().size(); i-- > 0;) {
    const Rational& t = f.breaks()[i];
    if (t > lo && t < hi) cuts.push_back(t);
  }
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    s.pieces.push_back({cuts[i], cuts[i + 1], evaluate(f, cuts[i + 1])});
  s.validate();
  return s;
}

StepFunction assemble(const std::vector<Segment>& parts) {
  // parts must tile (0,1]; order them by position
  std::vector<Segment> sorted = parts;
  std::sort(sorted.begin(), sorted.end(), [](const Segment& x, const Segment& y) { return x.a() > y.a(); });
  std::vector<Rational> breaks{Rational(1)};
  std::vector<Rational> vals;
  if (sorted.front().b() != Rational(1)) throw DomainError("assemble: parts must reach 1");
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k > 0 && sorted[k].b() != sorted[k - 1].a()) throw DomainError("assemble: parts must tile");
    const auto& ps = sorted[k].pieces;
    for (std::size_t i = ps.size(); i-- > 0;) {
      vals.push_back(ps[i].value);
      breaks.push_back(ps[i].lo);
    }
  }
  if (breaks.back().sign() != 0) throw DomainError("assemble: parts must reach 0");
  return StepFunction(std::move(breaks), std::move(vals));
}

void BlockInstance::validate() const {
  f.validate();
  if (ends.size() < 2 || alphas.size() + 1 != ends.size())
    throw DomainError("BlockInstance: need one alpha per block");
  if (ends.front() != f.a() || ends.back() != f.b())
    throw DomainError("BlockInstance: block ends must span the segment");
  for (std::size_t j = 1; j < ends.size(); ++j)
    if (!(ends[j] > ends[j - 1])) throw DomainError("BlockInstance: ends must increase");
  for (std::size_t j = 1; j < alphas.size(); ++j)
    if (alphas[j] > alphas[j - 1]) throw DomainError("BlockInstance: alphas must be non-increasing");
  if (alphas.back().sign() < 0) throw DomainError("BlockInstance: alphas must be >= 0");
}

Rational BlockInstance::g_integral_on(const Rational& lo, const Rational& hi) const {
  Rational s(0);
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const Rational l = max(lo, ends[j]), h = min(hi, ends[j + 1]);
    if (l < h) s += alphas[j] * (h - l);
  }
  return s;
}

namespace {

// geometry (3.3): t_j <= (t_{j-1} + t_{j+1}) / 2, i.e. widths non-decreasing.
void require_geometry(const std::vector<Rational>& ends) {
  for (std::size_t j = 1; j + 1 < ends.size(); ++j)
    if (ends[j] * Rational(2) > ends[j - 1] + ends[j + 1])
      throw PreconditionError("block geometry (3.3) violated");
}

Segment slice(const Segment& f, const Rational& lo, const Rational& hi) {
  Segment s;
  for (const auto& p : f.pieces) {
    const Rational l = max(lo, p.lo), h = min(hi, p.hi);
    if (l < h) s.pieces.push_back({l, h, p.value});
  }
  s.validate();
  return s;
}

Segment translate(const Segment& f, const Rational& shift) {
  Segment s = f;
  for (auto& p : s.pieces) {
    p.lo += shift;
    p.hi += shift;
  }
  return s;
}

Segment concat(const std::vector<Segment>& parts) {
  Segment s;
  for (const auto& part : parts)
    for (const auto& p : part.pieces) {
      if (!s.pieces.empty() && s.pieces.back().value == p.value && s.pieces.back().hi == p.lo)
        s.pieces.back().hi = p.hi;
      else
        s.pieces.push_back(p);
    }
  s.validate();
  return s;
}

// monotone (non-increasing, left to right) rearrangement of f on [lo,hi]
Segment sort_descending_on(const Segment& f, const Rational& lo, const Rational& hi) {
  Segment mid = slice(f, lo, hi);
  std::vector<Segment::Piece> ps = mid.pieces;
  std::stable_sort(ps.begin(), ps.end(),
                   [](const Segment::Piece& x, const Segment::Piece& y) { return x.value > y.value; });
  Segment out;
  Rational pos = lo;
  for (const auto& p : ps) {
    const Rational w = p.hi - p.lo;
    out.pieces.push_back({pos, pos + w, p.value});
    pos += w;
  }
  out.pieces.back().hi = hi;  // exact
  std::vector<Segment> parts;
  if (lo > f.a()) parts.push_back(slice(f, f.a(), lo));
  parts.push_back(out);
  if (hi < f.b()) parts.push_back(slice(f, hi, f.b()));
  return concat(parts);
}

}  // namespace

SwapResult two_block_swap(const BlockInstance& inst) {
  inst.validate();
  require_geometry(inst.ends);
  const auto& t = inst.ends;
  const std::size_t n = inst.alphas.size();
  if (n < 2) throw PreconditionError("two_block_swap: need at least two blocks");
  const Rational a = t.front(), b = t.back(), t1 = t[1];
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (inst.f.integral_on(t[j], t[j + 1]) < inst.g_integral_on(t[j], t[j + 1]))
      throw PreconditionError("two_block_swap: block domination fails before the last block");
  // hypothesis 3 asks for a strict total; with equality the swap radius is
  // still searched (the feasible set can degenerate to a single root)
  if (inst.f.integral() < inst.g_integral_on(a, b))
    throw PreconditionError("two_block_swap: total integral must dominate");

  // WLOG f non-increasing on the last block
  Segment f = sort_descending_on(inst.f, t[n - 1], b);

  auto u_of = [&](const Rational& r) {
    return f.integral_on(b - r, b) + f.integral_on(a + r, t1) - inst.g_integral_on(a, t1);
  };
  auto v_of = [&](const Rational& r) {
    return f.integral_on(a, a + r) + f.integral_on(t1, b - r) - inst.g_integral_on(t1, b);
  };

  const Rational rmax = t1 - a;
  if (u_of(Rational(0)) < Rational(0))
    throw PreconditionError("two_block_swap: first block domination fails");
  std::optional<Rational> r0;
  if (v_of(Rational(0)) >= Rational(0)) {
    r0 = Rational(0);
  } else {
    // u, v are piecewise linear in r; scan the linear pieces
    std::vector<Rational> rs{Rational(0), rmax};
    for (const auto& p : f.pieces) {
      for (const Rational& c : {p.lo, p.hi}) {
        const Rational ra = c - a, rb = b - c;
        if (ra > Rational(0) && ra < rmax) rs.push_back(ra);
        if (rb > Rational(0) && rb < rmax) rs.push_back(rb);
      }
    }
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    for (std::size_t i = 0; i + 1 < rs.size() && !r0; ++i) {
      const Rational r1 = rs[i], r2 = rs[i + 1];
      const Rational u1 = u_of(r1), u2 = u_of(r2), v1 = v_of(r1), v2 = v_of(r2);
      // w(r) = w1 + (w2-w1) (r-r1)/(r2-r1) >= 0 on [r1,r2]
      Rational lo = r1, hi = r2;
      bool ok = true;
      auto clip = [&](const Rational& w1, const Rational& w2) {
        if (w1 >= Rational(0) && w2 >= Rational(0)) return;
        if (w1 < Rational(0) && w2 >= Rational(0)) {
          lo = max(lo, r1 + (r2 - r1) * (-w1) / (w2 - w1));
        } else if (w1 >= Rational(0) && w2 < Rational(0)) {
          hi = min(hi, r1 + (r2 - r1) * (-w1) / (w2 - w1));
        } else {
          ok = false;
        }
      };
      clip(u1, u2);
      clip(v1, v2);
      if (ok && lo <= hi) r0 = lo;
    }
  }
  if (!r0) throw PreconditionError("two_block_swap: no feasible swap radius (hypotheses violated)");

  SwapResult out;
  out.r0 = *r0;
  if (r0->is_zero()) {
    out.f = f;
    return out;
  }
  const Segment left = slice(f, a, a + *r0);
  const Segment right = slice(f, b - *r0, b);
  std::vector<Segment> parts;
  parts.push_back(translate(right, a - (b - *r0)));
  if (a + *r0 < b - *r0) parts.push_back(slice(f, a + *r0, b - *r0));
  parts.push_back(translate(left, b - *r0 - a));
  out.f = concat(parts);
  return out;
}

namespace {

// Lemma 3.3, both parts: from hypothesis 3 to all n block dominations.
Segment lemma33(const Segment& f, const std::vector<Rational>& ends, const std::vector<Rational>& alphas);

// Lemma 3.4: blocks with non-decreasing widths and prefix domination.
Segment lemma34(const Segment& f0, std::vector<Rational> ends, std::vector<Rational> alphas) {
  const std::size_t n = alphas.size();
  BlockInstance inst{f0, ends, alphas};
  auto gint = [&](const Rational& lo, const Rational& hi) { return inst.g_integral_on(lo, hi); };
  if (n == 1) return f0;

  Segment f = f0;
  // fix the largest violated interior block by recursion on [a, t_j0];
  // prefix domination restricts to the head, so the hypotheses carry over
  std::size_t j0 = 0;
  for (std::size_t j = n - 1; j >= 1; --j) {
    if (f.integral_on(ends[j - 1], ends[j]) < gint(ends[j - 1], ends[j])) {
      j0 = j;
      break;
    }
    if (j == 1) break;
  }
  if (j0 > 0) {
    std::vector<Rational> sub_ends(ends.begin(), ends.begin() + j0 + 1);
    std::vector<Rational> sub_alphas(alphas.begin(), alphas.begin() + j0);
    const Segment head = lemma34(slice(f, ends[0], ends[j0]), sub_ends, sub_alphas);
    f = concat({head, slice(f, ends[j0], ends.back())});
  }

  if (f.integral_on(ends[n - 1], ends[n]) >= gint(ends[n - 1], ends[n])) return f;
  if (f.integral_on(ends[1], ends.back()) >= gint(ends[1], ends.back())) {
    std::vector<Rational> sub_ends(ends.begin() + 1, ends.end());
    std::vector<Rational> sub_alphas(alphas.begin() + 1, alphas.end());
    const Segment tail = lemma34(slice(f, ends[1], ends.back()), sub_ends, sub_alphas);
    return concat({slice(f, ends[0], ends[1]), tail});
  }
  return lemma33(f, ends, alphas);
}

Segment lemma33(const Segment& f, const std::vector<Rational>& ends, const std::vector<Rational>& alphas) {
  const std::size_t n = alphas.size();
  BlockInstance inst{f, ends, alphas};
  if (n == 1) {
    if (f.integral() < inst.g_integral_on(ends.front(), ends.back()))
      throw PreconditionError("lemma33: single block cannot dominate");
    return f;
  }
  const Segment fp = two_block_swap(inst).f;
  // fp dominates on blocks 1..n-1 and on [t_1, b]; fix the smallest violated
  // suffix by induction (part II)
  BlockInstance pi{fp, ends, alphas};
  std::size_t k = 0;
  for (std::size_t j = 2; j < n; ++j) {
    if (fp.integral_on(ends[j], ends.back()) < pi.g_integral_on(ends[j], ends.back())) {
      k = j;
      break;
    }
  }
  if (k == 0) {
    // suffix sums fine; the last block equals the suffix at t_{n-1}
    return fp;
  }
  std::vector<Rational> sub_ends(ends.begin() + (k - 1), ends.end());
  std::vector<Rational> sub_alphas(alphas.begin() + (k - 1), alphas.end());
  const Segment fixed = lemma33(slice(fp, ends[k - 1], ends.back()), sub_ends, sub_alphas);
  return concat({slice(fp, ends.front(), ends[k - 1]), fixed});
}

}  // namespace

Segment dominate_on_interval(const BlockInstance& inst) {
  inst.validate();
  const auto& t = inst.ends;
  // strict prefix domination at every point: vertices suffice
  {
    std::vector<Rational> vx;
    for (const auto& p : inst.f.pieces) vx.push_back(p.hi);
    for (const auto& e : t) if (e > t.front()) vx.push_back(e);
    std::sort(vx.begin(), vx.end());
    vx.erase(std::unique(vx.begin(), vx.end()), vx.end());
    for (const auto& v : vx)
      if (!(inst.f.integral_on(t.front(), v) > inst.g_integral_on(t.front(), v)))
        throw PreconditionError("dominate_on_interval: strict prefix domination fails");
  }
  // refine to equal widths (common rational divisor) to satisfy (3.3)
  mpz_class L = 1;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const Rational w = t[j] - t[j - 1];
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), L.get_mpz_t(), w.den().get_mpz_t());
    L = l;
  }
  mpz_class G = 0;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const Rational w = t[j] - t[j - 1];
    mpz_class scaled = w.num() * (L / w.den());
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), G.get_mpz_t(), scaled.get_mpz_t());
    G = g;
  }
  const Rational d = Rational(mpq_class(G, L));
  const Rational total = t.back() - t.front();
  const Rational count_r = total / d;
  if (!count_r.is_integer() || count_r > Rational(4096))
    throw OracleLimit("dominate_on_interval: refinement too fine");
  std::vector<Rational> ends{t.front()};
  std::vector<Rational> alphas;
  for (std::size_t j = 1; j < t.size(); ++j) {
    const Rational w = t[j] - t[j - 1];
    const long m = static_cast<long>(mpz_class(Rational(w / d).num()).get_si());
    for (long i = 1; i <= m; ++i) {
      ends.push_back(t[j - 1] + d * Rational(i));
      alphas.push_back(inst.alphas[j - 1]);
    }
    ends.back() = t[j];
  }
  Segment out = lemma34(inst.f, ends, alphas);
  // defensive: the construction's contract, checked exactly
  for (std::size_t j = 1; j < t.size(); ++j)
    if (out.integral_on(t[j - 1], t[j]) < inst.g_integral_on(t[j - 1], t[j]))
      throw Error("dominate_on_interval: postcondition violated");
  if (!segments_equimeasurable(out, inst.f)) throw Error("dominate_on_interval: not equimeasurable");
  return out;
}

std::vector<Rational> split_points(const StepFunction& x, const StepFunction& y, long count) {
  if (count < 1) throw DomainError("split_points: count must be >= 1");
  const StepFunction diff = subtract(x, y);
  const PsiTable D(diff);
  std::vector<Rational> verts;  // ascending positive vertices
  for (const auto& tq : merged_breakpoints(x, y))
    if (tq.sign() > 0) verts.push_back(tq);
  std::sort(verts.begin(), verts.end());
  for (const auto& v : verts)
    if (!(D(v) > Rational(0)))
      throw PreconditionError("split_points: domination not strict");

  std::vector<Rational> rs{Rational(1)};
  const Rational c = verts.front();  // innermost vertex: D linear increasing on (0,c]
  Rational min_d = D(verts.front());
  for (const auto& v : verts) min_d = min(min_d, D(v));
  while (static_cast<long>(rs.size()) < count) {
    const Rational r = rs.back();
    Rational next;
    if (r > c) {
      // jump into the first linear piece, low enough that D(next) < min over
      // all vertices above
      const Rational dc = D(c);
      next = c * min_d / (Rational(2) * max(dc, min_d));
    } else {
      next = r / Rational(2);
    }
    // verify the segment property exactly at vertices
    const Rational dn = D(next);
    for (const auto& v : verts)
      if (v > next && !(D(v) > dn)) throw Error("split_points: segment property violated");
    rs.push_back(next);
  }
  return rs;
}

StepFunction construct_dominating(const StepFunction& x, const StepFunction& y,
                                  const IntervalPartition& f_cells, const Rational& eps) {
  if (eps.sign() <= 0) throw DomainError("construct_dominating: eps must be positive");
  if (!y.is_nonincreasing() || !y.is_nonnegative())
    throw PreconditionError("construct_dominating: y must be non-increasing and >= 0");
  if (!x.is_nonnegative()) throw PreconditionError("construct_dominating: x must be >= 0");
  if (!f_cells.is_explicit()) throw PreconditionError("construct_dominating: cell partition must be explicit");
  const auto cells = f_cells.points(1 << 20);
  if (cells.back().sign() != 0)
    throw PreconditionError("construct_dominating: cell partition must be finite");
  for (std::size_t i = 1; i < cells.size(); ++i) {
    // y constant on each cell
    const StepFunction ys = y;
    const Rational v_hi = evaluate(ys, cells[i - 1]);
    for (const auto& t : ys.breaks())
      if (t > cells[i] && t < cells[i - 1] && evaluate(ys, t) != v_hi)
        throw PreconditionError("construct_dominating: y not constant on a cell");
  }
  const StepFunction xs = rearrange_decreasing(x);
  {
    const PsiTable px(xs), py(y);
    for (const auto& t : merged_breakpoints(xs, y))
      if (t.sign() > 0 && px(t) < py(t))
        throw PreconditionError("construct_dominating: prefix domination fails");
  }
  const StepFunction xe = add(xs, StepFunction::constant(eps));
  const auto rs = split_points(xe, y, 2);
  const Rational r = rs[1];

  // top segment [r, 1]: blocks are the F-cells intersected with [r, 1]
  std::vector<Rational> ends{r};
  std::vector<Rational> alphas;
  for (std::size_t i = cells.size(); i-- > 1;) {
    const Rational lo = cells[i], hi = cells[i - 1];
    if (hi <= r) continue;
    ends.push_back(hi);
    alphas.push_back(evaluate(y, hi));
  }
  // ends ascend; alphas were pushed deepest-first, so they are non-increasing
  BlockInstance inst;
  inst.f = restrict_to(xe, r, Rational(1));
  inst.ends = ends;
  inst.alphas = alphas;
  Segment top = dominate_on_interval(inst);

  Segment bottom;
  bottom.pieces.push_back({Rational(0), r, evaluate(xe, r)});
  // below r both functions are in their innermost constant pieces
  StepFunction xbar = assemble({top, bottom});

  if (!equimeasurable(xbar, xe)) throw Error("construct_dominating: equimeasurability lost");
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const Rational avg =
        (prefix_integral(xbar, cells[i - 1]) - prefix_integral(xbar, cells[i])) / (cells[i - 1] - cells[i]);
    if (avg < evaluate(y, cells[i - 1]))
      throw Error("construct_dominating: cell domination failed");
  }
  return xbar;
}

OracleVerdict permutation_oracle(const std::vector<Rational>& x_cells,
                                 const std::vector<Rational>& y_cells,
                                 const std::vector<long>& f_cell_of_grid_cell) {
  const std::size_t n = x_cells.size();
  if (n == 0 || n > 8) throw OracleLimit("permutation_oracle: need 1 <= n <= 8 cells");
  if (f_cell_of_grid_cell.size() != n)
    throw DomainError("permutation_oracle: need one F-cell index per grid cell");
  const long m = *std::max_element(f_cell_of_grid_cell.begin(), f_cell_of_grid_cell.end()) + 1;
  if (static_cast<std::size_t>(m) != y_cells.size())
    throw DomainError("permutation_oracle: y size must match F-cell count");

  std::vector<long> cell_count(static_cast<std::size_t>(m), 0);
  for (long fc : f_cell_of_grid_cell) cell_count[static_cast<std::size_t>(fc)]++;
  std::vector<Rational> need;  // required sum of x values per F-cell
  for (std::size_t j = 0; j < y_cells.size(); ++j)
    need.push_back(y_cells[j] * Rational(cell_count[j]));

  OracleVerdict out;
  // permutation search over the value multiset
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<Rational> vals = x_cells;
  std::sort(vals.begin(), vals.end());
  do {
    std::vector<Rational> sum(static_cast<std::size_t>(m), Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      sum[static_cast<std::size_t>(f_cell_of_grid_cell[i])] += vals[i];
    bool ok = true;
    for (std::size_t j = 0; j < need.size() && ok; ++j) ok = sum[j] >= need[j];
    if (ok) {
      out.perm_feasible = true;
      // report which original value index sits in each grid cell
      std::vector<Rational> pool = x_cells;
      out.witness.clear();
      for (std::size_t i = 0; i < n; ++i) {
        auto it = std::find(pool.begin(), pool.end(), vals[i]);
        out.witness.push_back(static_cast<int>(it - pool.begin()));
        *it = Rational(-1) - Rational(static_cast<long>(i));  // mark consumed
      }
      break;
    }
  } while (std::next_permutation(vals.begin(), vals.end()));

  // exact mass feasibility over all rearrangements: for every union U of
  // F-cells, sum of demands <= integral of the top |U| values
  std::vector<Rational> sorted_desc = x_cells;
  std::sort(sorted_desc.begin(), sorted_desc.end(), [](const Rational& a, const Rational& b) { return a > b; });
  std::vector<Rational> top_mass{Rational(0)};
  for (const auto& v : sorted_desc) top_mass.push_back(top_mass.back() + v);
  out.mass_feasible = true;
  for (long mask = 1; mask < (1L << m); ++mask) {
    Rational demand(0);
    long width = 0;
    for (long j = 0; j < m; ++j)
      if (mask & (1L << j)) {
        demand += need[static_cast<std::size_t>(j)];
        width += cell_count[static_cast<std::size_t>(j)];
      }
    if (demand > top_mass[static_cast<std::size_t>(width)]) {
      out.mass_feasible = false;
      break;
    }
  }
  return out;
}

}  // namespace rearr
