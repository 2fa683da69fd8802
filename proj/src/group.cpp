#include "ssq/group.hpp"

#include <algorithm>
#include <set>

namespace ssq {

namespace {

struct Triplet {
  std::uint32_t row, col;
  std::int32_t coef;
};

// Columns bucketed from row-wise contributions; duplicates are summed on append.
ExactMatrix from_triplets(const Ring& R, std::size_t rows, std::size_t cols, std::vector<Triplet>& ts) {
  std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  ExactMatrix M(R, rows, 0);
  std::size_t k = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    SparseColumn c;
    while (k < ts.size() && ts[k].col == j) {
      std::int64_t v = ts[k].coef;
      std::uint32_t r = ts[k].row;
      ++k;
      while (k < ts.size() && ts[k].col == j && ts[k].row == r) v += ts[k++].coef;
      if (v) c.emplace_back(r, Scalar(v));
    }
    M.append_column(std::move(c));
  }
  ts.clear();
  ts.shrink_to_fit();
  return M;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Lexicographic index of a tuple over an alphabet of size n.
std::uint32_t encode(const std::vector<std::uint32_t>& t, std::size_t n) {
  std::size_t x = 0;
  for (auto v : t) x = x * n + v;
  return static_cast<std::uint32_t>(x);
}

void decode(std::size_t x, std::size_t n, std::vector<std::uint32_t>& t) {
  for (std::size_t i = t.size(); i-- > 0;) {
    t[i] = static_cast<std::uint32_t>(x % n);
    x /= n;
  }
}

std::string tuple_name(const FiniteGroupData& G, const std::vector<std::uint32_t>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + G.elements[t[i]];
  return s + "]";
}

std::vector<std::uint32_t> generators(const FiniteGroupData& G) {
  std::vector<std::uint32_t> gens;
  std::vector<bool> in(G.order(), false);
  in[0] = true;
  for (std::uint32_t g = 0; g < G.order(); ++g) {
    if (in[g]) continue;
    gens.push_back(g);
    // closure of the generated subgroup
    std::vector<std::uint32_t> frontier{0};
    std::fill(in.begin(), in.end(), false);
    in[0] = true;
    while (!frontier.empty()) {
      auto x = frontier.back();
      frontier.pop_back();
      for (auto s : gens) {
        auto y = G.mul(x, s);
        if (!in[y]) in[y] = true, frontier.push_back(y);
      }
    }
  }
  return gens;
}

std::string element_name(std::size_t i, const char* sym) {
  if (i == 0) return "1";
  if (i == 1) return sym;
  return std::string(sym) + "^" + std::to_string(i);
}

}  // namespace

std::uint32_t FiniteGroupData::index(const std::string& name) const {
  auto it = std::find(elements.begin(), elements.end(), name);
  if (it == elements.end()) throw Error(ErrorKind::BadInput, "unknown group element '" + name + "'");
  return static_cast<std::uint32_t>(it - elements.begin());
}

FiniteGroupData load_group(std::vector<std::string> elements, std::vector<std::vector<std::uint32_t>> table) {
  const std::size_t n = elements.size();
  if (n == 0) throw Error(ErrorKind::BadInput, "empty group");
  if (n > 64) throw Error(ErrorKind::ResourceCap, "group order " + std::to_string(n) + " exceeds 64");
  if (table.size() != n) throw Error(ErrorKind::BadInput, "multiplication table is not square");
  for (auto& row : table) {
    if (row.size() != n) throw Error(ErrorKind::BadInput, "multiplication table is not square");
    for (auto v : row)
      if (v >= n) throw Error(ErrorKind::BadInput, "table entry out of range");
  }
  std::set<std::string> seen(elements.begin(), elements.end());
  if (seen.size() != n) throw Error(ErrorKind::BadInput, "duplicate element names");
  for (std::uint32_t a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a)
      throw Error(ErrorKind::NoIdentity, "element 0 ('" + elements[0] + "') is not an identity: fails on '" +
                                             elements[a] + "'");
  FiniteGroupData G;
  G.inverse.assign(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::uint32_t b = 0; b < n && !found; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) G.inverse[a] = b, found = true;
    if (!found) throw Error(ErrorKind::NoInverse, "'" + elements[a] + "' has no two-sided inverse");
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorKind::NotAssociative,
                      "(" + elements[a] + " " + elements[b] + ") " + elements[c] + " != " + elements[a] + " (" +
                          elements[b] + " " + elements[c] + ")");
  G.elements = std::move(elements);
  G.table = std::move(table);
  return G;
}

FiniteGroupData cyclic_group(std::size_t n) {
  std::vector<std::string> el;
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    el.push_back(element_name(i, "g"));
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<std::uint32_t>((i + j) % n);
  }
  return load_group(el, t);
}

FiniteGroupData dihedral8() {
  std::vector<std::string> el;
  std::vector<std::vector<std::uint32_t>> t(8, std::vector<std::uint32_t>(8));
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 4; ++i) el.push_back(i == 0 && j ? "b" : element_name(i, "a") + (j ? "b" : ""));
  el[0] = "1";
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int i = x % 4, j = x / 4, k = y % 4, l = y / 4;
      int ii = ((i + (j ? -k : k)) % 4 + 4) % 4, jj = (j + l) % 2;
      t[x][y] = static_cast<std::uint32_t>(ii + 4 * jj);
    }
  return load_group(el, t);
}

GroupExtensionData make_extension(const FiniteGroupData& G, std::vector<std::uint32_t> normal) {
  std::sort(normal.begin(), normal.end());
  normal.erase(std::unique(normal.begin(), normal.end()), normal.end());
  const std::size_t n = G.order();
  GroupExtensionData E;
  E.G = G;
  E.inN.assign(n, -1);
  for (auto x : normal) {
    if (x >= n) throw Error(ErrorKind::BadInput, "normal subgroup index out of range");
    E.inN[x] = 0;
  }
  if (normal.empty() || normal[0] != 0) throw Error(ErrorKind::BadInput, "subgroup must contain the identity");
  for (auto a : normal) {
    if (E.inN[G.inv(a)] < 0) throw Error(ErrorKind::BadInput, "subset is not closed under inverses");
    for (auto b : normal)
      if (E.inN[G.mul(a, b)] < 0) throw Error(ErrorKind::BadInput, "subset is not closed under multiplication");
  }
  for (std::uint32_t g = 0; g < n; ++g)
    for (auto x : normal)
      if (E.inN[G.mul(G.mul(g, x), G.inv(g))] < 0)
        throw Error(ErrorKind::NotNormal,
                    G.elements[g] + " " + G.elements[x] + " " + G.elements[g] + "^-1 leaves the subgroup");
  for (std::size_t i = 0; i < normal.size(); ++i) E.inN[normal[i]] = static_cast<std::int64_t>(i);
  E.normal = normal;

  std::vector<std::string> nel;
  std::vector<std::vector<std::uint32_t>> nt(normal.size(), std::vector<std::uint32_t>(normal.size()));
  for (std::size_t i = 0; i < normal.size(); ++i) {
    nel.push_back(G.elements[normal[i]]);
    for (std::size_t j = 0; j < normal.size(); ++j)
      nt[i][j] = static_cast<std::uint32_t>(E.inN[G.mul(normal[i], normal[j])]);
  }
  E.N = load_group(nel, nt);

  // cosets labelled by their smallest element, in order of that element
  std::vector<std::uint32_t> label(n);
  for (std::uint32_t g = 0; g < n; ++g) {
    std::uint32_t m = g;
    for (auto x : normal) m = std::min(m, G.mul(g, x));
    label[g] = m;
  }
  std::vector<std::uint32_t> reps;
  for (std::uint32_t g = 0; g < n; ++g)
    if (label[g] == g) reps.push_back(g);
  E.quotientMap.resize(n);
  for (std::uint32_t g = 0; g < n; ++g)
    E.quotientMap[g] = static_cast<std::uint32_t>(std::lower_bound(reps.begin(), reps.end(), label[g]) - reps.begin());
  std::vector<std::string> qel;
  std::vector<std::vector<std::uint32_t>> qt(reps.size(), std::vector<std::uint32_t>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    qel.push_back(i == 0 ? "1" : G.elements[reps[i]] + "N");
    for (std::size_t j = 0; j < reps.size(); ++j) qt[i][j] = E.quotientMap[G.mul(reps[i], reps[j])];
  }
  E.Q = load_group(qel, qt);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (E.quotientMap[G.mul(a, b)] != E.Q.mul(E.quotientMap[a], E.quotientMap[b]))
        throw Error(ErrorKind::NotNormal, "quotient multiplication is not well defined");
  return E;
}

GroupModule GroupModule::trivial(const FiniteGroupData& G, Ring ring, std::size_t rank) {
  GroupModule M;
  M.ring = ring;
  M.rank = rank;
  M.action.assign(G.order(), ExactMatrix::identity(ring, rank));
  return M;
}

GroupModule make_module(const FiniteGroupData& G, Ring ring, std::size_t rank, std::vector<ExactMatrix> action) {
  if (action.size() != G.order()) throw Error(ErrorKind::BadInput, "action must list one matrix per element");
  for (auto& m : action)
    if (m.rows() != rank || m.cols() != rank || m.ring() != ring)
      throw Error(ErrorKind::DimensionMismatch, "action matrix has the wrong shape or ring");
  if (action[0] != ExactMatrix::identity(ring, rank))
    throw Error(ErrorKind::NotAHomomorphism, "identity does not act as the identity matrix");
  std::vector<std::uint32_t> right;
  if (G.order() <= 16)
    for (std::uint32_t s = 0; s < G.order(); ++s) right.push_back(s);
  else
    right = generators(G);
  for (std::uint32_t g = 0; g < G.order(); ++g)
    for (auto s : right)
      if (action[G.mul(g, s)] != action[g] * action[s])
        throw Error(ErrorKind::NotAHomomorphism,
                    "rho(" + G.elements[g] + " " + G.elements[s] + ") != rho(" + G.elements[g] + ") rho(" +
                        G.elements[s] + ")");
  GroupModule M;
  M.ring = ring;
  M.rank = rank;
  M.action = std::move(action);
  return M;
}

BasedComplex cochain_complex(const FiniteGroupData& G, const GroupModule& M, int N, const GroupCaps& caps) {
  if (N < 1) throw Error(ErrorKind::BadInput, "cochain complex needs N >= 1");
  const std::size_t n = G.order(), k = M.rank;
  if (M.action.size() != n) throw Error(ErrorKind::BadInput, "module does not match the group");
  if (ipow(n, N) * k > caps.cochains)
    throw Error(ErrorKind::ResourceCap, "|G|^N * rank = " + std::to_string(ipow(n, N) * k) + " exceeds the cap " +
                                            std::to_string(caps.cochains));
  const Ring& R = M.ring;
  std::map<int, std::vector<std::string>> basis;
  for (int q = 0; q <= N; ++q) {
    std::vector<std::uint32_t> t(q);
    auto& names = basis[-q];
    for (std::size_t x = 0; x < ipow(n, q); ++x) {
      decode(x, n, t);
      std::string s = tuple_name(G, t);
      for (std::size_t j = 0; j < k; ++j) names.push_back(k == 1 ? s : s + "#" + std::to_string(j));
    }
  }
  std::map<int, ExactMatrix> diffs;
  for (int q = 0; q < N; ++q) {
    std::vector<std::uint32_t> t(q + 1), s(q);
    const std::size_t rows = ipow(n, q + 1) * k, cols = ipow(n, q) * k;
    ExactMatrix D(R, rows, 0);
    std::vector<SparseColumn> colv(cols);
    for (std::size_t x = 0; x < ipow(n, q + 1); ++x) {
      decode(x, n, t);
      for (std::size_t i = 0; i < k; ++i) {
        const std::uint32_t row = static_cast<std::uint32_t>(x * k + i);
        std::copy(t.begin() + 1, t.end(), s.begin());
        const std::uint32_t s0 = encode(s, n);
        for (std::size_t j = 0; j < k; ++j) {
          Scalar a = M.action[t[0]].at(i, j);
          if (!a.is_zero()) colv[s0 * k + j].emplace_back(row, a);
        }
        for (int f = 1; f <= q; ++f) {
          for (int m = 0, o = 0; m <= q; ++m) {
            if (m == f - 1) s[o++] = G.mul(t[m], t[m + 1]), ++m;
            else s[o++] = t[m];
          }
          colv[encode(s, n) * k + i].emplace_back(row, Scalar(f % 2 ? -1 : 1));
        }
        std::copy(t.begin(), t.end() - 1, s.begin());
        colv[encode(s, n) * k + i].emplace_back(row, Scalar((q + 1) % 2 ? -1 : 1));
      }
    }
    for (auto& c : colv) D.append_column(std::move(c));
    diffs.emplace(-q, std::move(D));
  }
  return BasedComplex(R, std::move(basis), std::move(diffs), true);
}

FgModulePresentation group_cohomology(const FiniteGroupData& G, const GroupModule& M, int n, const GroupCaps& caps) {
  if (n < 0) return FgModulePresentation::free(M.ring, 0);
  return homology_in(cochain_complex(G, M, n + 1, caps), n);
}

DoubleComplex lhs_double_complex(const GroupExtensionData& E, Ring ring, int Npq, const GroupCaps& caps) {
  if (Npq < 1) throw Error(ErrorKind::BadInput, "truncation must be at least 1");
  const FiniteGroupData& G = E.G;
  const FiniteGroupData& Q = E.Q;
  const std::size_t ng = G.order(), nq = Q.order();
  auto dimpq = [&](int p, int q) { return ipow(nq, p + 1) * ipow(ng, q); };
  for (int p = 0; p <= Npq; ++p)
    for (int q = 0; p + q <= Npq; ++q)
      if (dimpq(p, q) > caps.lhsEntry)
        throw Error(ErrorKind::ResourceCap, "LHS entry (" + std::to_string(p) + "," + std::to_string(q) + ") has " +
                                                std::to_string(dimpq(p, q)) + " cochains, above the cap " +
                                                std::to_string(caps.lhsEntry));
  std::map<Position, std::vector<std::string>> entries;
  for (int p = 0; p <= Npq; ++p)
    for (int q = 0; p + q <= Npq; ++q) {
      auto& names = entries[{p, q}];
      names.reserve(dimpq(p, q));
      std::vector<std::uint32_t> qs(p + 1), gs(q);
      const std::size_t gq = ipow(ng, q);
      for (std::size_t x = 0; x < dimpq(p, q); ++x) {
        decode(x / gq, nq, qs);
        decode(x % gq, ng, gs);
        names.push_back(tuple_name(Q, qs) + tuple_name(G, gs));
      }
    }

  std::map<Position, ExactMatrix> H, V;
  for (int p = 0; p <= Npq; ++p)
    for (int q = 0; p + q < Npq; ++q) {
      // horizontal into (p+1, q): sign (-1)^{(p+1)+q+1} sum_i (-1)^i f(d_i qs, gs)
      {
        const int sgn = (p + q) % 2 ? -1 : 1;
        const std::size_t gq = ipow(ng, q), rows = dimpq(p + 1, q), cols = dimpq(p, q);
        std::vector<Triplet> ts;
        ts.reserve(rows * (p + 2));
        std::vector<std::uint32_t> qs(p + 2), fs(p + 1);
        for (std::size_t x = 0; x < rows; ++x) {
          decode(x / gq, nq, qs);
          const std::size_t g = x % gq;
          for (int i = 0; i <= p + 1; ++i) {
            for (int m = 0, o = 0; m <= p + 1; ++m)
              if (m != i) fs[o++] = qs[m];
            ts.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(encode(fs, nq) * gq + g),
                          (i % 2 ? -1 : 1) * sgn});
          }
        }
        H.emplace(Position{p, q}, from_triplets(ring, rows, cols, ts));
      }
      // vertical into (p, q+1): sign (-1)^{(q+1)+1} sum_i (-1)^i f(qs, d_i (1, g_1..g_{q+1}))
      {
        const int sgn = q % 2 ? -1 : 1;
        const std::size_t gt = ipow(ng, q + 1), gs_ = ipow(ng, q), rows = dimpq(p, q + 1), cols = dimpq(p, q);
        std::vector<Triplet> ts;
        ts.reserve(rows * (q + 2));
        std::vector<std::uint32_t> qs(p + 1), tail(q + 1), full(q + 2), fs(q + 1), qt(p + 1), out(q);
        for (std::size_t x = 0; x < rows; ++x) {
          decode(x / gt, nq, qs);
          decode(x % gt, ng, tail);
          full[0] = 0;
          std::copy(tail.begin(), tail.end(), full.begin() + 1);
          for (int i = 0; i <= q + 1; ++i) {
            for (int m = 0, o = 0; m <= q + 1; ++m)
              if (m != i) fs[o++] = full[m];
            // canonical orbit representative: translate by fs[0]^{-1}
            const std::uint32_t h = G.inv(fs[0]);
            const std::uint32_t hq = E.quotientMap[h];
            for (int m = 0; m <= p; ++m) qt[m] = Q.mul(hq, qs[m]);
            for (int m = 0; m < q; ++m) out[m] = G.mul(h, fs[m + 1]);
            ts.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(encode(qt, nq) * gs_ + encode(out, ng)),
                          (i % 2 ? -1 : 1) * sgn});
          }
        }
        V.emplace(Position{p, q}, from_triplets(ring, rows, cols, ts));
      }
    }
  return DoubleComplex(ring, std::move(entries), std::move(H), std::move(V), Npq);
}

namespace {

// Number of generators of the image of a chain map on cohomology in degree n.
std::size_t induced_rank(const BasedComplex& src, const BasedComplex& dst, const ExactMatrix& f, int n) {
  const Ring& R = src.ring();
  FgModulePresentation Hs = homology_in(src, n);
  const int dn = dst.internal(n);
  Submodule K = kernel_basis(dst.d(dn));
  Submodule B = dst.dim(dn + 1) ? image_basis(dst.d(dn + 1)) : Submodule::zero(R, dst.dim(dn));
  Submodule img(dst.dim(dn), f * Hs.representatives);
  return subquotient(sum(img, B), B).size();
}

}  // namespace

std::size_t restriction_rank(const GroupExtensionData& E, Ring ring, int q, const GroupCaps& caps) {
  if (q < 0) return 0;
  BasedComplex CG = cochain_complex(E.G, GroupModule::trivial(E.G, ring), q + 1, caps);
  BasedComplex CN = cochain_complex(E.N, GroupModule::trivial(E.N, ring), q + 1, caps);
  const std::size_t ng = E.G.order(), nn = E.N.order();
  ExactMatrix res(ring, ipow(nn, q), 0);
  std::vector<std::uint32_t> t(q), u(q);
  for (std::size_t x = 0; x < ipow(ng, q); ++x) {
    decode(x, ng, t);
    bool inside = true;
    for (int i = 0; i < q && inside; ++i) {
      inside = E.inN[t[i]] >= 0;
      if (inside) u[i] = static_cast<std::uint32_t>(E.inN[t[i]]);
    }
    SparseColumn c;
    if (inside) c.emplace_back(encode(u, nn), Scalar(1));
    res.append_column(std::move(c));
  }
  return induced_rank(CG, CN, res, q);
}

std::size_t inflation_rank(const GroupExtensionData& E, Ring ring, int p, const GroupCaps& caps) {
  if (p < 0) return 0;
  BasedComplex CQ = cochain_complex(E.Q, GroupModule::trivial(E.Q, ring), p + 1, caps);
  BasedComplex CG = cochain_complex(E.G, GroupModule::trivial(E.G, ring), p + 1, caps);
  const std::size_t ng = E.G.order(), nq = E.Q.order();
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> cols(ipow(nq, p));
  std::vector<std::uint32_t> t(p), u(p);
  for (std::size_t x = 0; x < ipow(ng, p); ++x) {
    decode(x, ng, t);
    for (int i = 0; i < p; ++i) u[i] = E.quotientMap[t[i]];
    cols[encode(u, nq)].emplace_back(static_cast<std::uint32_t>(x), Scalar(1));
  }
  ExactMatrix inf = ExactMatrix::from_columns(ring, ipow(ng, p), std::move(cols));
  return induced_rank(CQ, CG, inf, p);
}

BasedComplex tensor_over_group(const BasedComplex& C, const FiniteGroupData& G, const FreeAction& act,
                               const GroupModule& M) {
  const Ring& R = C.ring();
  const std::size_t ng = G.order(), k = M.rank;
  if (M.action.size() != ng) throw Error(ErrorKind::BadInput, "module does not match the group");
  struct Orbits {
    std::vector<std::uint32_t> reps;
    std::vector<std::uint32_t> orbit, elem;  // basis index -> (orbit, g) with e_i = g . rep
  };
  std::map<int, Orbits> orb;
  for (int n : C.degrees()) {
    auto it = act.perm.find(n);
    if (it == act.perm.end() || it->second.size() != ng)
      throw Error(ErrorKind::BadInput, "action missing in degree " + std::to_string(C.display(n)));
    const auto& P = it->second;
    const std::size_t dn = C.dim(n);
    for (std::uint32_t g = 0; g < ng; ++g) {
      if (P[g].size() != dn) throw Error(ErrorKind::BadInput, "action permutation has the wrong length");
      std::vector<bool> hit(dn, false);
      for (auto v : P[g]) {
        if (v >= dn || hit[v]) throw Error(ErrorKind::BadInput, "action is not a permutation");
        hit[v] = true;
      }
    }
    for (std::uint32_t i = 0; i < dn; ++i) {
      if (P[0][i] != i) throw Error(ErrorKind::BadInput, "identity must act trivially");
      for (std::uint32_t g = 0; g < ng; ++g)
        for (std::uint32_t h = 0; h < ng; ++h)
          if (P[G.mul(g, h)][i] != P[g][P[h][i]]) throw Error(ErrorKind::BadInput, "permutations do not form an action");
    }
    Orbits& o = orb[n];
    o.orbit.assign(dn, UINT32_MAX);
    o.elem.assign(dn, 0);
    for (std::uint32_t i = 0; i < dn; ++i) {
      if (o.orbit[i] != UINT32_MAX) continue;
      const std::uint32_t id = static_cast<std::uint32_t>(o.reps.size());
      o.reps.push_back(i);
      std::set<std::uint32_t> members;
      for (std::uint32_t g = 0; g < ng; ++g) {
        auto y = P[g][i];
        members.insert(y);
        if (o.orbit[y] == UINT32_MAX) o.orbit[y] = id, o.elem[y] = g;
      }
      if (members.size() != ng)
        throw Error(ErrorKind::ActionNotFree, "orbit of '" + C.names(n)[i] + "' has " +
                                                  std::to_string(members.size()) + " elements, not " +
                                                  std::to_string(ng));
    }
    // d must commute with the action
    if (C.dim(n - 1))
      for (std::uint32_t g = 0; g < ng; ++g)
        for (std::uint32_t i = 0; i < dn; ++i) {
          SparseColumn moved;
          for (auto& [r, v] : C.d(n).column(i)) moved.emplace_back(act.perm.at(n - 1)[g][r], v);
          if (canonical_column(R, moved) != C.d(n).column(P[g][i]))
            throw Error(ErrorKind::BadInput, "differential is not equivariant");
        }
  }
  std::map<int, std::vector<std::string>> basis;
  for (auto& [n, o] : orb)
    for (auto r : o.reps)
      for (std::size_t j = 0; j < k; ++j)
        basis[n].push_back(C.names(n)[r] + (k == 1 ? "" : "|" + std::to_string(j)));
  std::map<int, ExactMatrix> diffs;
  for (auto& [n, o] : orb) {
    auto below = orb.find(n - 1);
    if (below == orb.end()) continue;
    ExactMatrix D(R, below->second.reps.size() * k, 0);
    for (auto r : o.reps)
      for (std::size_t j = 0; j < k; ++j) {
        // d(x (x) m_j) = sum c_y g_y x' (x) m_j = sum c_y x' (x) g_y^{-1} m_j
        SparseColumn c;
        for (auto& [y, cy] : C.d(n).column(r)) {
          const auto& rho = M.action[G.inv(below->second.elem[y])];
          for (auto& [i, a] : rho.column(j))
            c.emplace_back(static_cast<std::uint32_t>(below->second.orbit[y] * k + i), cy * a);
        }
        D.append_column(std::move(c));
      }
    diffs.emplace(n, std::move(D));
  }
  return BasedComplex(R, std::move(basis), std::move(diffs), C.cohomological());
}

}  // namespace ssq
