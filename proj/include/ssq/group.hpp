#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssq/double.hpp"

namespace ssq {

/** Finite group as a multiplication table; element 0 is the identity. */
struct FiniteGroupData {
  std::vector<std::string> elements;
  std::vector<std::vector<std::uint32_t>> table;  // table[a][b] = a b
  std::vector<std::uint32_t> inverse;

  std::size_t order() const { return elements.size(); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a][b]; }
  std::uint32_t inv(std::uint32_t a) const { return inverse[a]; }
  std::uint32_t index(const std::string& name) const;
};

/**
 * Validates a table exhaustively: NoIdentity (element 0 must be it), NoInverse,
 * NotAssociative, each with a witness. Orders above 64 raise ResourceCap.
 */
FiniteGroupData load_group(std::vector<std::string> elements, std::vector<std::vector<std::uint32_t>> table);

FiniteGroupData cyclic_group(std::size_t n);
/** C_4 x| C_2 = <a> x| <b> with b a b^-1 = a^-1; elements a^i b^j at index i + 4j. */
FiniteGroupData dihedral8();

/** N normal in G with the derived quotient Q = G/N. */
struct GroupExtensionData {
  FiniteGroupData G;
  std::vector<std::uint32_t> normal;       // element indices of N, ascending
  FiniteGroupData N;                        // N with its own indexing
  FiniteGroupData Q;
  std::vector<std::uint32_t> quotientMap;  // G index -> Q index
  std::vector<std::int64_t> inN;           // G index -> N index, or -1
};

/** BadInput when N is not a subgroup, NotNormal when some g N g^-1 != N. */
GroupExtensionData make_extension(const FiniteGroupData& G, std::vector<std::uint32_t> normal);

/** Left module: action[g] acts on column vectors of length rank. */
struct GroupModule {
  Ring ring = Ring::integers();
  std::size_t rank = 0;
  std::vector<ExactMatrix> action;

  static GroupModule trivial(const FiniteGroupData& G, Ring ring, std::size_t rank = 1);
};

/**
 * Checks shapes, identity, and the homomorphism law: on all pairs for order <= 16,
 * otherwise on g * s for s in a generating set. Raises NotAHomomorphism.
 */
GroupModule make_module(const FiniteGroupData& G, Ring ring, std::size_t rank, std::vector<ExactMatrix> action);

struct GroupCaps {
  std::size_t cochains = 20000;     // |G|^N * rank(M)
  std::size_t lhsEntry = 100000;    // |Q|^(p+1) |G|^q for the largest entry
};

/**
 * Inhomogeneous cochains C^q = functions G^q -> M for q <= N with
 * (df)(g_1..g_{q+1}) = g_1 f(g_2..) + sum (-1)^i f(..g_i g_{i+1}..) + (-1)^{q+1} f(g_1..g_q).
 * Degrees 0..N-1 are certified.
 */
BasedComplex cochain_complex(const FiniteGroupData& G, const GroupModule& M, int N, const GroupCaps& caps = {});
FgModulePresentation group_cohomology(const FiniteGroupData& G, const GroupModule& M, int n, const GroupCaps& caps = {});

/**
 * C^{p,q} = Hom_Q(B_p(Q), Hom_N(B_q(G), R)) realised as G-invariant functions on
 * Q^{p+1} x G^{q+1}, basis the orbit representatives (qs, (1, g_1..g_q)). Truncated at p+q <= Npq.
 */
DoubleComplex lhs_double_complex(const GroupExtensionData& E, Ring ring, int Npq, const GroupCaps& caps = {});

/** Rank of H^q(G) -> H^q(N) (number of generators of the image over Z). */
std::size_t restriction_rank(const GroupExtensionData& E, Ring ring, int q, const GroupCaps& caps = {});
/** Rank of H^p(Q) -> H^p(G). */
std::size_t inflation_rank(const GroupExtensionData& E, Ring ring, int p, const GroupCaps& caps = {});

/** Free G-action on a based chain complex: perm[n][g][i] = index of g . e_i in degree n. */
struct FreeAction {
  std::map<int, std::vector<std::vector<std::uint32_t>>> perm;
};

/** C (x)_{RG} M with x (x) m identified to g x (x) g m. ActionNotFree for non-free actions. */
BasedComplex tensor_over_group(const BasedComplex& C, const FiniteGroupData& G, const FreeAction& act,
                               const GroupModule& M);

}  // namespace ssq
