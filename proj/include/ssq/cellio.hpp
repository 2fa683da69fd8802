#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ssq/formal.hpp"
#include "ssq/group.hpp"

namespace ssq::io {

using json = nlohmann::json;

/** Reads a JSON file; BadInput on I/O or syntax errors. */
json load_json(const std::string& path);

struct SemiSimplicialSet {
  struct Cell {
    std::string name;
    int dim = 0;
    std::vector<std::string> faces;  // d_0 .. d_dim
  };
  std::vector<Cell> cells;
  /** Optional cell -> filtration level. */
  std::map<std::string, int> filtration;
};

/** Checks face counts (BadFaceArity) and d_i d_j = d_{j-1} d_i for i < j (SimplicialIdentityViolation). */
SemiSimplicialSet parse_semisimplicial(const json& j);
json to_json(const SemiSimplicialSet& S);

/**
 * Chain complex with d = sum (-1)^i d_i, cells ordered by dimension then by file order.
 * An empty filtration gives the trivial one; FiltrationNotMonotone names a cell with a higher face.
 */
FilteredComplex chain_complex_of(const SemiSimplicialSet& S, const Ring& ring,
                                 const std::map<std::string, int>& filtration = {});

/**
 * {"kind": "complex", "ring", "cochain", "degrees": {n: names}, "differentials": {n: rows},
 *  "filtration": {n: levels}}. Degrees, keys and levels are displayed; d is keyed by source.
 */
FilteredComplex parse_complex(const json& j);
json to_json(const FilteredComplex& FC);

/** Complex or semi-simplicial file. */
FilteredComplex parse_filtered(const json& j);

struct GroupFile {
  FiniteGroupData G;
  std::optional<std::vector<std::uint32_t>> normal;
  /** Raw module block {"rank", "action": {element: matrix}}; trivial rank 1 when absent. */
  json module;
};

/** {"kind": "group", "elements", "table" (indices or names), "normal", "module"}. */
GroupFile parse_group(const json& j);
json to_json(const GroupFile& g);
/** Matrices for a generating set of elements, extended multiplicatively; no action block means trivial. */
GroupModule parse_module(const json& j, const FiniteGroupData& G, const Ring& ring);

/** Free G-complex with coefficients: {"kind": "equivariant", "complex", "group", "action": {n: perms}, "module"}. */
struct EquivariantFile {
  BasedComplex complex;
  GroupFile group;
  FreeAction action;
  GroupModule module;
};

EquivariantFile parse_equivariant(const json& j);
json to_json(const EquivariantFile& e);

struct FormalFixture {
  FormalPage page;
  std::vector<std::pair<Axis, std::string>> constraints;
  std::map<int, FgModulePresentation> target;
  std::string description;
};

FormalFixture parse_formal(const json& j);
json to_json(const FormalFixture& F);
/** The fixture page with its edge constraints applied. */
FormalPage constrained_page(const FormalFixture& F);

FgModulePresentation parse_module_factors(const json& j, const Ring& ring);
json factors_json(const FgModulePresentation& m);

enum class ChartFormat { Ascii, Json };

/**
 * ASCII: q up, p right, cells padded to the widest label in their column, "0" for zero
 * entries inside the trusted range, "·" outside it. JSON: {"r", "ring", "entries": {"p,q": factors}}
 * with zero entries omitted. `arrows` lists the nonzero d_arrows below the ASCII grid.
 */
std::string render_chart(const SpectralPage& E, ChartFormat fmt, std::optional<int> arrows = std::nullopt);
std::string render_chart(const FormalPage& P, ChartFormat fmt, std::optional<int> arrows = std::nullopt);

}  // namespace ssq::io
