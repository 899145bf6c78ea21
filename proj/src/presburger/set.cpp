#include "igusa/presburger/set.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace igusa::presburger {

Box Box::cube(size_t n, long lo, long hi) {
  Box b;
  b.lo.assign(n, Int(lo));
  b.hi.assign(n, Int(hi));
  return b;
}

PresburgerSet PresburgerSet::universe(size_t n) {
  PresburgerSet s(n);
  s.cells_.push_back(PCell(n));
  return s;
}

PresburgerSet PresburgerSet::from_cell(const PCell& c) {
  PresburgerSet s(c.arity);
  PCell d = c.normalized();
  if (!cell_is_empty(d)) s.cells_.push_back(d);
  return s;
}

PresburgerSet PresburgerSet::from_disjoint(size_t n, const std::vector<PCell>& cells) {
  PresburgerSet s(n);
  for (const auto& c : cells) {
    if (c.arity != n) throw std::invalid_argument("PresburgerSet: arity mismatch");
    PCell d = c.normalized();
    if (!cell_is_empty(d)) s.cells_.push_back(d);
  }
  return s;
}

bool PresburgerSet::contains(const IntVec& x) const {
  for (const auto& c : cells_)
    if (c.contains(x)) return true;
  return false;
}

std::optional<IntVec> PresburgerSet::find_point() const {
  for (const auto& c : cells_)
    if (auto p = presburger::find_point(c)) return p;
  return std::nullopt;
}

namespace {

PCell negate_ineq(const LinTerm& t) {
  PCell c(t.arity());
  LinTerm n = -t;
  n.constant -= 1;
  c.add_ge(n);
  return c;
}

void check_arity(size_t a, size_t b) {
  if (a != b) throw std::invalid_argument("Presburger arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

// Cells equal except for one congruence whose residues, taken together, form a coarser class.
bool merge_once(std::vector<PCell>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    for (size_t ci = 0; ci < cells[i].congs.size(); ++ci) {
      const Congruence key = cells[i].congs[ci];
      PCell rest = cells[i];
      rest.congs.erase(rest.congs.begin() + static_cast<long>(ci));
      std::vector<size_t> group{i};
      std::vector<Int> residues{key.r};
      for (size_t j = i + 1; j < cells.size(); ++j) {
        if (cells[j].ineqs != rest.ineqs || cells[j].congs.size() != rest.congs.size() + 1) continue;
        for (size_t cj = 0; cj < cells[j].congs.size(); ++cj) {
          const auto& c = cells[j].congs[cj];
          if (c.coef != key.coef || c.m != key.m) continue;
          PCell other = cells[j];
          other.congs.erase(other.congs.begin() + static_cast<long>(cj));
          if (other.congs == rest.congs) {
            group.push_back(j);
            residues.push_back(c.r);
          }
          break;
        }
      }
      if (group.size() < 2) continue;
      // smallest divisor d of m such that the residue set is a single class mod d
      const Int& m = key.m;
      std::sort(residues.begin(), residues.end());
      for (Int d = 1; d <= m; ++d) {
        if (mod_floor(m, d) != 0) continue;
        Int cls = mod_floor(residues[0], d);
        Int need = m / d;
        if (Int(static_cast<unsigned long>(residues.size())) != need) continue;
        bool ok = true;
        for (const auto& r : residues)
          if (mod_floor(r, d) != cls) ok = false;
        if (!ok) continue;
        PCell merged = rest;
        if (d > 1) merged.add_cong(Congruence{key.coef, cls, d});
        merged.normalize();
        std::vector<PCell> next;
        for (size_t j = 0; j < cells.size(); ++j)
          if (std::find(group.begin(), group.end(), j) == group.end()) next.push_back(cells[j]);
        next.push_back(merged);
        cells.swap(next);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

void merge_cells(std::vector<PCell>& cells) {
  while (merge_once(cells)) {
  }
}

std::vector<PCell> cell_minus(const PCell& a, const PCell& b) {
  PCell inter = a.intersect(b);
  if (inter.infeasible || cell_is_empty(inter)) return {a};
  std::vector<PCell> out;
  PCell acc = a;  // a and the atoms of b seen so far
  for (const auto& t : b.ineqs) {
    PCell piece = acc.intersect(negate_ineq(t));
    if (!piece.infeasible && !cell_is_empty(piece)) out.push_back(piece);
    acc.add_ge(t);
    acc.normalize();
    if (acc.infeasible) return out;
  }
  for (const auto& cg : b.congs) {
    for (Int r = 0; r < cg.m; ++r) {
      if (r == cg.r) continue;
      PCell alt(a.arity);
      alt.add_cong(Congruence{cg.coef, r, cg.m});
      PCell piece = acc.intersect(alt);
      if (!piece.infeasible && !cell_is_empty(piece)) out.push_back(piece);
    }
    acc.add_cong(cg);
    acc.normalize();
    if (acc.infeasible) return out;
  }
  return out;
}

PresburgerSet PresburgerSet::minus(const PresburgerSet& o) const {
  check_arity(arity_, o.arity_);
  PresburgerSet r(arity_);
  for (const auto& c : cells_) {
    std::vector<PCell> pieces{c};
    for (const auto& d : o.cells_) {
      std::vector<PCell> next;
      for (const auto& p : pieces) {
        auto q = cell_minus(p, d);
        next.insert(next.end(), q.begin(), q.end());
      }
      pieces.swap(next);
      if (pieces.empty()) break;
    }
    r.cells_.insert(r.cells_.end(), pieces.begin(), pieces.end());
  }
  return r;
}

PresburgerSet PresburgerSet::unite(const PresburgerSet& o) const {
  check_arity(arity_, o.arity_);
  PresburgerSet r = *this;
  PresburgerSet extra = o.minus(*this);
  r.cells_.insert(r.cells_.end(), extra.cells_.begin(), extra.cells_.end());
  return r;
}

PresburgerSet PresburgerSet::intersect(const PresburgerSet& o) const {
  check_arity(arity_, o.arity_);
  PresburgerSet r(arity_);
  for (const auto& a : cells_)
    for (const auto& b : o.cells_) {
      PCell c = a.intersect(b);
      if (!c.infeasible && !cell_is_empty(c)) r.cells_.push_back(c);
    }
  return r;
}

PresburgerSet PresburgerSet::complement() const { return universe(arity_).minus(*this); }

PresburgerSet PresburgerSet::eliminate(size_t k) const {
  if (k >= arity_) throw std::out_of_range("eliminate: variable index out of range");
  PresburgerSet r(arity_ - 1);
  for (const auto& c : cells_) {
    auto parts = PresburgerSet::from_disjoint(arity_ - 1, eliminate_var(c, k));
    for (auto& p : parts.cells_) p = remove_redundant(p);
    merge_cells(parts.cells_);
    r = r.unite(parts);
  }
  merge_cells(r.cells_);
  return r;
}

PresburgerSet PresburgerSet::project_onto(const std::vector<size_t>& keep) const {
  std::vector<bool> kept(arity_, false);
  for (auto k : keep) kept.at(k) = true;
  PresburgerSet s = *this;
  std::vector<size_t> remaining;
  for (size_t i = 0; i < arity_; ++i) remaining.push_back(i);
  for (size_t i = arity_; i-- > 0;) {
    if (kept[i]) continue;
    s = s.eliminate(i);
    remaining.erase(remaining.begin() + static_cast<long>(i));
  }
  std::vector<size_t> perm;
  for (auto k : keep) perm.push_back(static_cast<size_t>(std::find(remaining.begin(), remaining.end(), k) - remaining.begin()));
  return s.permute(perm);
}

PresburgerSet PresburgerSet::insert_var(size_t i) const {
  PresburgerSet r(arity_ + 1);
  for (const auto& c : cells_) r.cells_.push_back(c.insert_var(i));
  return r;
}

PresburgerSet PresburgerSet::permute(const std::vector<size_t>& perm) const {
  // old variable perm[j] becomes new variable j
  size_t n = perm.size();
  std::vector<LinTerm> images(arity_, LinTerm(n));
  for (size_t j = 0; j < n; ++j) images.at(perm[j]) = LinTerm::var(n, j);
  PresburgerSet r(n);
  for (const auto& c : cells_) r.cells_.push_back(c.pullback(images, n));
  return r;
}

PresburgerSet PresburgerSet::pullback(const std::vector<LinTerm>& images, size_t n) const {
  PresburgerSet r(n);
  for (const auto& c : cells_) {
    PCell d = c.pullback(images, n);
    if (!d.infeasible && !cell_is_empty(d)) r.cells_.push_back(d);
  }
  return r;
}

PresburgerSet PresburgerSet::product(const PresburgerSet& o) const {
  size_t n = arity_ + o.arity_;
  std::vector<LinTerm> left, right;
  for (size_t i = 0; i < arity_; ++i) left.push_back(LinTerm::var(n, i));
  for (size_t i = 0; i < o.arity_; ++i) right.push_back(LinTerm::var(n, arity_ + i));
  PresburgerSet r(n);
  for (const auto& a : cells_)
    for (const auto& b : o.cells_) r.cells_.push_back(a.pullback(left, n).intersect(b.pullback(right, n)));
  return r;
}

PresburgerSet PresburgerSet::scale(const Int& c) const {
  if (c < 1) throw std::invalid_argument("scale: factor must be positive");
  if (c == 1) return *this;
  PresburgerSet r(arity_);
  for (const auto& cell : cells_) {
    PCell d(arity_);
    for (const auto& t : cell.ineqs) d.add_ge(LinTerm(t.coef, t.constant * c));
    for (const auto& cg : cell.congs) d.add_cong(Congruence{cg.coef, cg.r * c, cg.m * c});
    for (size_t i = 0; i < arity_; ++i) d.add_cong(LinTerm::var(arity_, i), c);
    d.normalize();
    r.cells_.push_back(d);
  }
  return r;
}

PresburgerSet PresburgerSet::dilate(const Int& rho) const {
  if (rho < 1) throw std::invalid_argument("dilate: factor must be positive");
  if (rho == 1) return *this;
  PresburgerSet r(arity_);
  for (const auto& cell : cells_) {
    PCell d(arity_);
    for (const auto& t : cell.ineqs) d.add_ge(LinTerm(t.coef, t.constant * rho));
    for (const auto& cg : cell.congs) d.add_cong(Congruence{cg.coef, cg.r * rho, cg.m * rho});
    d.normalize();
    r.cells_.push_back(d);
  }
  return r;
}

namespace {

bool fits_long(const Int& z) { return z.fits_slong_p(); }

struct FastCell {
  std::vector<std::vector<long>> ineq;  // coef..., constant
  std::vector<std::vector<long>> cong;  // coef..., -r, m
};

bool to_fast(const PCell& c, FastCell& f) {
  for (const auto& t : c.ineqs) {
    std::vector<long> row;
    for (const auto& a : t.coef) {
      if (!fits_long(a) || abs(a) > (1L << 20)) return false;
      row.push_back(a.get_si());
    }
    if (!fits_long(t.constant) || abs(t.constant) > (1L << 40)) return false;
    row.push_back(t.constant.get_si());
    f.ineq.push_back(row);
  }
  for (const auto& cg : c.congs) {
    std::vector<long> row;
    for (const auto& a : cg.coef) {
      if (!fits_long(a) || abs(a) > (1L << 20)) return false;
      row.push_back(a.get_si());
    }
    if (!fits_long(cg.m) || cg.m > (1L << 30)) return false;
    row.push_back(-cg.r.get_si());
    row.push_back(cg.m.get_si());
    f.cong.push_back(row);
  }
  return true;
}

long floordiv_l(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void enum_fast(const FastCell& f, size_t n, const std::vector<long>& lo, const std::vector<long>& hi,
               std::vector<IntVec>& out) {
  std::vector<long> x(n);
  // recursive over coordinates 0..n-2, last coordinate via ranges
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i + 1 < n) {
      for (long v = lo[i]; v <= hi[i]; ++v) {
        x[i] = v;
        self(self, i + 1);
      }
      return;
    }
    long a = lo[n - 1], b = hi[n - 1];
    for (const auto& row : f.ineq) {
      long s = row[n];
      for (size_t j = 0; j + 1 < n; ++j) s += row[j] * x[j];
      long c = row[n - 1];
      if (c == 0) {
        if (s < 0) return;
      } else if (c > 0) {
        a = std::max(a, -floordiv_l(s, c));  // c y >= -s
      } else {
        b = std::min(b, floordiv_l(s, -c));  // -c' y >= -s  ->  y <= s / c'
      }
      if (a > b) return;
    }
    for (long y = a; y <= b; ++y) {
      x[n - 1] = y;
      bool ok = true;
      for (const auto& row : f.cong) {
        long s = row[n];
        long m = row[n + 1];
        for (size_t j = 0; j < n; ++j) s += (row[j] % m) * (x[j] % m) % m;
        if (((s % m) + m) % m != 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        IntVec p;
        for (long v : x) p.emplace_back(v);
        out.push_back(p);
      }
    }
  };
  if (n == 0) {
    for (const auto& row : f.ineq)
      if (row[0] < 0) return;
    for (const auto& row : f.cong)
      if (((row[0] % row[1]) + row[1]) % row[1] != 0) return;
    out.push_back({});
    return;
  }
  rec(rec, 0);
}

void enum_slow(const PCell& c, const Box& box, std::vector<IntVec>& out) {
  size_t n = c.arity;
  IntVec x = box.lo;
  if (n == 0) {
    if (c.contains(x)) out.push_back(x);
    return;
  }
  for (size_t i = 0; i < n; ++i)
    if (box.lo[i] > box.hi[i]) return;
  while (true) {
    if (c.contains(x)) out.push_back(x);
    size_t i = n;
    while (i-- > 0) {
      if (x[i] < box.hi[i]) {
        x[i] += 1;
        break;
      }
      x[i] = box.lo[i];
      if (i == 0) return;
    }
  }
}

}  // namespace

std::vector<IntVec> enumerate_cell(const PCell& c, const Box& box) {
  if (box.arity() != c.arity) throw std::invalid_argument("enumerate: box arity mismatch");
  std::vector<IntVec> out;
  if (c.infeasible) return out;
  FastCell f;
  bool fast = to_fast(c, f);
  std::vector<long> lo, hi;
  for (size_t i = 0; i < c.arity && fast; ++i) {
    if (!fits_long(box.lo[i]) || !fits_long(box.hi[i]) || abs(box.lo[i]) > (1L << 20) || abs(box.hi[i]) > (1L << 20))
      fast = false;
    else {
      lo.push_back(box.lo[i].get_si());
      hi.push_back(box.hi[i].get_si());
    }
  }
  if (fast) enum_fast(f, c.arity, lo, hi, out);
  else enum_slow(c, box, out);
  return out;
}

std::vector<IntVec> PresburgerSet::enumerate(const Box& box) const {
  std::vector<IntVec> out;
  for (const auto& c : cells_) {
    auto pts = enumerate_cell(c, box);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string PresburgerSet::str(const std::vector<std::string>& names) const {
  if (cells_.empty()) return "false";
  std::string s;
  for (size_t i = 0; i < cells_.size(); ++i) {
    if (i) s += " or ";
    std::string c = cells_[i].str(names);
    s += cells_.size() > 1 ? "(" + c + ")" : c;
  }
  return s;
}

PresburgerSet boolean_op(const PresburgerSet& a, const PresburgerSet& b, const std::string& op) {
  if (op == "complement") return a.complement();
  if (a.arity() != b.arity()) throw std::invalid_argument("boolean_op: arity mismatch");
  if (op == "union") return a.unite(b);
  if (op == "intersect") return a.intersect(b);
  if (op == "difference") return a.minus(b);
  throw std::invalid_argument("boolean_op: unknown operation " + op);
}

std::optional<IntVec> distinguishing_point(const PresburgerSet& a, const PresburgerSet& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("equivalent: arity mismatch");
  if (auto p = a.minus(b).find_point()) return p;
  return b.minus(a).find_point();
}

bool equivalent(const PresburgerSet& a, const PresburgerSet& b) { return !distinguishing_point(a, b).has_value(); }

}  // namespace igusa::presburger
