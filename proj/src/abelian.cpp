// Extension candidates for finite abelian groups and the filtration tower of H_n.

#include <algorithm>
#include <functional>
#include <map>

#include "ssq/filtered.hpp"

namespace ssq {

namespace {

constexpr long kMaxTorsionOrder = 1024;
constexpr long kMaxTuples = 1L << 22;

// ell -> exponents of the ell-primary cyclic factors
std::map<long, std::vector<int>> primary_parts(const std::vector<Int>& torsion) {
  std::map<long, std::vector<int>> out;
  for (const Int& f : torsion) {
    long n = f.convert_to<long>();
    for (long ell = 2; ell * ell <= n; ++ell) {
      int e = 0;
      while (n % ell == 0) n /= ell, ++e;
      if (e) out[ell].push_back(e);
    }
    if (n > 1) out[n].push_back(1);
  }
  for (auto& [ell, v] : out) std::sort(v.rbegin(), v.rend());
  return out;
}

void partitions(int n, int maxPart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxPart); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int total(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

// Does the ell-group of type lambda contain a subgroup of type mu with quotient of type nu?
bool realizes(long ell, const std::vector<int>& lambda, const std::vector<int>& mu, const std::vector<int>& nu) {
  if (mu.empty()) return lambda == nu;
  // necessary conditions from the Littlewood-Richardson rule
  if (lambda.size() < std::max(mu.size(), nu.size()) || lambda.size() > mu.size() + nu.size()) return false;
  int m1 = mu.empty() ? 0 : mu[0], n1 = nu.empty() ? 0 : nu[0];
  if (lambda[0] < std::max(m1, n1) || lambda[0] > m1 + n1) return false;

  const std::size_t k = lambda.size();
  // candidate images of each generator of the subgroup: elements killed by ell^mu_i
  std::vector<std::vector<std::vector<long>>> choices(mu.size());
  long tuples = 1;
  for (std::size_t g = 0; g < mu.size(); ++g) {
    std::vector<long> step(k), count(k);
    for (std::size_t i = 0; i < k; ++i) {
      int shift = std::max(lambda[i] - mu[g], 0);
      step[i] = ipow(ell, shift);
      count[i] = ipow(ell, lambda[i] - shift);
    }
    std::vector<long> x(k, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == k) {
        std::vector<long> v(k);
        for (std::size_t j = 0; j < k; ++j) v[j] = x[j] * step[j];
        choices[g].push_back(std::move(v));
        return;
      }
      for (x[i] = 0; x[i] < count[i]; ++x[i]) rec(i + 1);
    };
    rec(0);
    tuples *= static_cast<long>(choices[g].size());
    if (tuples > kMaxTuples) throw Error(ErrorKind::ResourceCap, "extension search exceeds the tuple budget");
  }

  std::vector<Int> target;
  for (int e : nu) target.push_back(Int(ipow(ell, e)));
  target = canonical_factors(target);
  long sub_order = ipow(ell, total(mu)), big_order = ipow(ell, total(lambda));

  std::vector<std::size_t> idx(mu.size(), 0);
  for (;;) {
    // quotient of Z^k / diag(ell^lambda) by the chosen images
    ExactMatrix M(Ring::integers(), k, 0);
    for (std::size_t i = 0; i < k; ++i) M.append_column({{static_cast<std::uint32_t>(i), Scalar(ipow(ell, lambda[i]))}});
    for (std::size_t g = 0; g < mu.size(); ++g) {
      SparseColumn c;
      const auto& v = choices[g][idx[g]];
      for (std::size_t i = 0; i < k; ++i)
        if (v[i]) c.emplace_back(static_cast<std::uint32_t>(i), Scalar(v[i]));
      M.append_column(std::move(c));
    }
    SnfResult s = smith_normal_form(M);
    std::vector<Int> q;
    long qorder = 1;
    for (std::size_t i = 0; i < k; ++i) {
      Int dii = i < s.rank ? Int(boost::multiprecision::numerator(s.D.at(i, i))) : Int(0);
      q.push_back(dii);
      qorder *= dii.convert_to<long>();
    }
    if (qorder * sub_order == big_order && canonical_factors(q) == target) return true;
    std::size_t g = 0;
    while (g < mu.size() && ++idx[g] == choices[g].size()) idx[g++] = 0;
    if (g == mu.size()) return false;
  }
}

FgModulePresentation with_free(const Ring& R, std::vector<Int> torsion, std::size_t free) {
  for (std::size_t i = 0; i < free; ++i) torsion.push_back(Int(0));
  return FgModulePresentation::detached(R, std::move(torsion));
}

}  // namespace

std::vector<FgModulePresentation> extension_candidates(const FgModulePresentation& A, const FgModulePresentation& E) {
  const Ring& R = A.ring;
  if (R.is_field()) return {FgModulePresentation::free(R, A.size() + E.size())};
  if (E.is_zero()) return {FgModulePresentation::detached(R, A.invariantFactors)};
  if (A.is_zero()) return {FgModulePresentation::detached(R, E.invariantFactors)};
  const std::size_t free = A.free_rank() + E.free_rank();
  auto tE = E.torsion();
  if (tE.empty()) return {with_free(R, A.torsion(), free)};
  if (A.free_rank() > 0)
    throw Error(ErrorKind::UnboundedEnumeration, "extension of torsion " + E.label() + " by " + A.label() +
                                                     " with a free submodule is not determined");
  Int order = A.torsion_order() * E.torsion_order();
  if (order > kMaxTorsionOrder)
    throw Error(ErrorKind::ResourceCap, "torsion order " + order.str() + " exceeds the enumeration bound");

  auto pa = primary_parts(A.torsion()), pe = primary_parts(tE);
  std::map<long, int> exps;
  for (auto& [ell, v] : pa) exps[ell] += total(v);
  for (auto& [ell, v] : pe) exps[ell] += total(v);

  // per prime, the admissible middle types; the answer is their product
  std::vector<std::vector<std::vector<Int>>> per_prime;
  for (auto& [ell, e] : exps) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<Int>> ok;
    for (auto& lam : parts)
      if (realizes(ell, lam, pa[ell], pe[ell])) {
        std::vector<Int> f;
        for (int x : lam) f.push_back(Int(ipow(ell, x)));
        ok.push_back(std::move(f));
      }
    per_prime.push_back(std::move(ok));
  }
  std::vector<std::vector<Int>> combos{{}};
  for (auto& opts : per_prime) {
    std::vector<std::vector<Int>> next;
    for (auto& base : combos)
      for (auto& o : opts) {
        auto c = base;
        c.insert(c.end(), o.begin(), o.end());
        next.push_back(std::move(c));
      }
    combos = std::move(next);
  }
  std::vector<FgModulePresentation> out;
  for (auto& c : combos) out.push_back(with_free(R, c, free));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.label() < b.label(); });
  return out;
}

ExtensionTower tower_from_diagonal(const Ring& ring, int n, const std::vector<std::pair<int, FgModulePresentation>>& diag) {
  ExtensionTower T;
  T.n = n;
  T.ring = ring;
  std::vector<FgModulePresentation> cur{FgModulePresentation::free(ring, 0)};
  for (auto& [p, E] : diag) {
    std::vector<FgModulePresentation> next;
    for (auto& A : cur)
      for (auto& B : extension_candidates(A, E)) {
        bool seen = false;
        for (auto& x : next) seen = seen || x.isomorphic(B);
        if (!seen) next.push_back(B);
      }
    ExtensionStep step;
    step.p = p;
    step.quotient = FgModulePresentation::detached(ring, E.invariantFactors);
    step.middles = next;
    T.steps.push_back(std::move(step));
    cur = std::move(next);
  }
  T.candidates = cur;
  T.resolved = cur.size() == 1;
  return T;
}

}  // namespace ssq
