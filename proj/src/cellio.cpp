#include "ssq/cellio.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace ssq::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string(what) + ": " + e.what());
  }
}

int int_key(const std::string& k) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(k, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != k.size() || k.empty()) throw Error(ErrorKind::BadInput, "expected an integer key, got '" + k + "'");
  return v;
}

Position pos_key(const std::string& k) {
  auto c = k.find(',');
  if (c == std::string::npos) throw Error(ErrorKind::BadInput, "expected a \"p,q\" key, got '" + k + "'");
  return {int_key(k.substr(0, c)), int_key(k.substr(c + 1))};
}

std::string pos_str(Position pq) { return std::to_string(pq.first) + "," + std::to_string(pq.second); }

Scalar scalar_of(const json& v) {
  if (v.is_number_integer()) return Scalar(v.get<long long>());
  if (v.is_string()) return Scalar(v.get<std::string>());
  throw Error(ErrorKind::BadInput, "matrix entries must be integers or strings, got " + v.dump());
}

json scalar_json(const Scalar& x) {
  if (boost::multiprecision::denominator(x) == 1) {
    Int n = boost::multiprecision::numerator(x);
    if (n >= Int(LLONG_MIN) && n <= Int(LLONG_MAX)) return n.convert_to<long long>();
  }
  return x.str();
}

json int_json(const Int& n) {
  if (n >= Int(LLONG_MIN) && n <= Int(LLONG_MAX)) return n.convert_to<long long>();
  return n.str();
}

ExactMatrix parse_matrix(const json& j, const Ring& R, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorKind::BadInput, what + ": matrix must be a list of rows");
  if (j.size() != rows) throw Error(ErrorKind::DimensionMismatch, what + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  std::vector<std::vector<Scalar>> r;
  for (auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw Error(ErrorKind::DimensionMismatch, what + ": expected rows of length " + std::to_string(cols));
    r.emplace_back();
    for (auto& v : row) r.back().push_back(scalar_of(v));
  }
  if (rows == 0) return ExactMatrix(R, 0, cols);
  return ExactMatrix::from_rows(R, r);
}

json matrix_json(const ExactMatrix& M) {
  json rows = json::array();
  for (auto& row : M.to_rows()) {
    json jr = json::array();
    for (auto& v : row) jr.push_back(scalar_json(v));
    rows.push_back(jr);
  }
  return rows;
}

std::uint32_t element_ref(const json& v, const std::vector<std::string>& names) {
  if (v.is_number_integer()) {
    auto i = v.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= names.size())
      throw Error(ErrorKind::BadInput, "element index " + std::to_string(i) + " out of range");
    return static_cast<std::uint32_t>(i);
  }
  if (v.is_string()) {
    auto it = std::find(names.begin(), names.end(), v.get<std::string>());
    if (it == names.end()) throw Error(ErrorKind::BadInput, "unknown element '" + v.get<std::string>() + "'");
    return static_cast<std::uint32_t>(it - names.begin());
  }
  throw Error(ErrorKind::BadInput, "elements are referenced by index or name, got " + v.dump());
}

const char* axis_str(Axis a) { return a == Axis::Vertical ? "vertical" : "horizontal"; }

Axis parse_axis(const std::string& s) {
  if (s == "vertical") return Axis::Vertical;
  if (s == "horizontal") return Axis::Horizontal;
  throw Error(ErrorKind::BadInput, "axis must be vertical or horizontal, got '" + s + "'");
}

struct Grid {
  std::map<Position, std::string> labels;
  std::function<std::string(Position)> filler;
};

std::string draw(const Grid& g) {
  int pmin = 0, pmax = 0, qmin = 0, qmax = 0;
  for (auto& [pq, l] : g.labels) {
    pmin = std::min(pmin, pq.first), pmax = std::max(pmax, pq.first);
    qmin = std::min(qmin, pq.second), qmax = std::max(qmax, pq.second);
  }
  // Column widths count code points so "·" pads like one character.
  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
  };
  std::vector<std::size_t> colw;
  for (int p = pmin; p <= pmax; ++p) {
    std::size_t w = std::to_string(p).size();
    for (int q = qmin; q <= qmax; ++q) {
      auto it = g.labels.find({p, q});
      w = std::max(w, width(it != g.labels.end() ? it->second : g.filler({p, q})));
    }
    colw.push_back(w);
  }
  std::size_t rw = 1;
  for (int q = qmin; q <= qmax; ++q) rw = std::max(rw, std::to_string(q).size());
  auto pad = [&](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, width(s)), ' '); };
  std::ostringstream out;
  for (int q = qmax; q >= qmin; --q) {
    std::string line = std::string(rw - std::to_string(q).size(), ' ') + std::to_string(q) + " |";
    for (int p = pmin; p <= pmax; ++p) {
      auto it = g.labels.find({p, q});
      line += " " + pad(it != g.labels.end() ? it->second : g.filler({p, q}), colw[p - pmin]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  std::size_t total = 1;
  for (auto w : colw) total += w + 1;
  out << std::string(rw + 1, ' ') << "+" << std::string(total, '-') << "\n";
  std::string axis = std::string(rw + 2, ' ');
  for (int p = pmin; p <= pmax; ++p) axis += " " + pad(std::to_string(p), colw[p - pmin]);
  while (!axis.empty() && axis.back() == ' ') axis.pop_back();
  out << axis << "\n";
  return out.str();
}

std::string arrow_line(int r, Position from, Position to, const ExactMatrix& M) {
  std::string m;
  for (auto& row : M.to_rows()) {
    m += m.empty() ? "[" : " ";
    m += "[";
    for (std::size_t i = 0; i < row.size(); ++i) m += (i ? " " : "") + row[i].str();
    m += "]";
  }
  m += "]";
  return "d_" + std::to_string(r) + ": (" + pos_str(from) + ") -> (" + pos_str(to) + ") " + m + "\n";
}

// One entry per line, keys in the canonical (sorted string) order of json objects.
std::string chart_json(int r, const Ring& ring, const std::map<Position, FgModulePresentation>& entries) {
  json e = json::object();
  for (auto& [pq, m] : entries)
    if (!m.is_zero()) e[pos_str(pq)] = factors_json(m);
  std::string out = "{\n \"entries\": {";
  bool first = true;
  for (auto& [k, v] : e.items()) {
    out += (first ? "\n  " : ",\n  ") + json(k).dump() + ": " + v.dump();
    first = false;
  }
  out += first ? "},\n" : "\n },\n";
  out += " \"r\": " + std::to_string(r) + ",\n \"ring\": " + json(ring.name()).dump() + "\n}\n";
  return out;
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, path + ": " + e.what());
  }
}

SemiSimplicialSet parse_semisimplicial(const json& j) {
  return guarded("semi-simplicial set", [&] {
    SemiSimplicialSet S;
    std::map<std::string, std::size_t> idx;
    for (auto& c : j.at("cells")) {
      SemiSimplicialSet::Cell cell;
      cell.name = c.at("name").get<std::string>();
      cell.dim = c.at("dim").get<int>();
      if (c.contains("faces")) cell.faces = c.at("faces").get<std::vector<std::string>>();
      if (cell.dim < 0) throw Error(ErrorKind::BadInput, "cell " + cell.name + " has negative dimension");
      if (!idx.emplace(cell.name, S.cells.size()).second) throw Error(ErrorKind::BadInput, "duplicate cell " + cell.name);
      S.cells.push_back(std::move(cell));
    }
    for (auto& c : S.cells) {
      std::size_t want = c.dim == 0 ? 0 : static_cast<std::size_t>(c.dim) + 1;
      if (c.faces.size() != want)
        throw Error(ErrorKind::BadFaceArity, "cell " + c.name + " of dimension " + std::to_string(c.dim) + " lists " +
                                                 std::to_string(c.faces.size()) + " faces, expected " + std::to_string(want));
      for (auto& f : c.faces) {
        auto it = idx.find(f);
        if (it == idx.end()) throw Error(ErrorKind::BadInput, "cell " + c.name + " has unknown face " + f);
        if (S.cells[it->second].dim != c.dim - 1)
          throw Error(ErrorKind::BadFaceArity, "face " + f + " of " + c.name + " has dimension " +
                                                   std::to_string(S.cells[it->second].dim));
      }
    }
    auto face = [&](const std::string& x, std::size_t i) { return S.cells[idx.at(x)].faces[i]; };
    for (auto& c : S.cells)
      for (std::size_t jj = 1; c.dim >= 2 && jj < c.faces.size(); ++jj)
        for (std::size_t i = 0; i < jj; ++i)
          if (face(c.faces[jj], i) != face(c.faces[i], jj - 1))
            throw Error(ErrorKind::SimplicialIdentityViolation,
                        "cell " + c.name + ": d_" + std::to_string(i) + " d_" + std::to_string(jj) + " = " +
                            face(c.faces[jj], i) + " but d_" + std::to_string(jj - 1) + " d_" + std::to_string(i) +
                            " = " + face(c.faces[i], jj - 1));
    if (j.contains("filtration"))
      for (auto& [k, v] : j.at("filtration").items()) S.filtration[k] = v.get<int>();
    return S;
  });
}

json to_json(const SemiSimplicialSet& S) {
  json cells = json::array();
  for (auto& c : S.cells) {
    json jc{{"name", c.name}, {"dim", c.dim}};
    if (!c.faces.empty()) jc["faces"] = c.faces;
    cells.push_back(jc);
  }
  json j{{"kind", "semisimplicial"}, {"cells", cells}};
  if (!S.filtration.empty()) j["filtration"] = S.filtration;
  return j;
}

FilteredComplex chain_complex_of(const SemiSimplicialSet& S, const Ring& ring, const std::map<std::string, int>& filtration) {
  const auto& filt = filtration.empty() ? S.filtration : filtration;
  std::map<int, std::vector<std::string>> basis;
  std::map<std::string, std::size_t> pos;
  std::map<std::string, int> dimOf;
  for (auto& c : S.cells) {
    pos[c.name] = basis[c.dim].size();
    dimOf[c.name] = c.dim;
    basis[c.dim].push_back(c.name);
  }
  std::map<int, ExactMatrix> diffs;
  for (auto& [n, names] : basis) {
    if (n == 0) continue;
    ExactMatrix D(ring, basis.count(n - 1) ? basis[n - 1].size() : 0, names.size());
    for (auto& c : S.cells) {
      if (c.dim != n) continue;
      for (std::size_t i = 0; i < c.faces.size(); ++i)
        D.add_to(pos[c.faces[i]], pos[c.name], Scalar(i % 2 ? -1 : 1));
    }
    diffs.emplace(n, std::move(D));
  }
  BasedComplex C(ring, basis, diffs);
  if (filt.empty()) return FilteredComplex::trivial(std::move(C));
  for (auto& c : S.cells) {
    auto it = filt.find(c.name);
    if (it == filt.end()) throw Error(ErrorKind::BadInput, "filtration misses cell " + c.name);
    for (auto& f : c.faces) {
      auto jt = filt.find(f);
      if (jt != filt.end() && jt->second > it->second)
        throw Error(ErrorKind::FiltrationNotMonotone, "cell " + c.name + " at level " + std::to_string(it->second) +
                                                          " has face " + f + " at level " + std::to_string(jt->second));
    }
  }
  for (auto& [k, v] : filt)
    if (!dimOf.count(k)) throw Error(ErrorKind::BadInput, "filtration names unknown cell " + k);
  std::map<int, std::vector<int>> levels;
  for (auto& [n, names] : basis)
    for (auto& x : names) levels[n].push_back(filt.at(x));
  return FilteredComplex(std::move(C), std::move(levels));
}

FilteredComplex parse_complex(const json& j) {
  return guarded("complex", [&] {
    Ring R = Ring::parse(j.value("ring", "Z"));
    bool co = j.value("cochain", false);
    auto in = [&](int shown) { return co ? -shown : shown; };
    std::map<int, std::vector<std::string>> basis;
    for (auto& [k, v] : j.at("degrees").items()) basis[in(int_key(k))] = v.get<std::vector<std::string>>();
    auto dim = [&](int internal) { return basis.count(internal) ? basis[internal].size() : std::size_t(0); };
    std::map<int, ExactMatrix> diffs;
    if (j.contains("differentials"))
      for (auto& [k, v] : j.at("differentials").items()) {
        int n = in(int_key(k));
        diffs.emplace(n, parse_matrix(v, R, dim(n - 1), dim(n), "differential " + k));
      }
    BasedComplex C(R, basis, diffs, co);
    if (!j.contains("filtration")) return FilteredComplex::trivial(std::move(C));
    std::map<int, std::vector<int>> levels;
    for (auto& [k, v] : j.at("filtration").items()) {
      auto& lv = levels[in(int_key(k))];
      for (auto& x : v) lv.push_back(co ? -x.get<int>() : x.get<int>());
    }
    return FilteredComplex(std::move(C), std::move(levels));
  });
}

json to_json(const FilteredComplex& FC) {
  const auto& C = FC.complex();
  bool co = C.cohomological();
  json degrees = json::object(), diffs = json::object(), filt = json::object();
  for (int n : C.degrees()) {
    std::string key = std::to_string(C.display(n));
    degrees[key] = C.names(n);
    if (C.dim(n - 1) && !C.d(n).is_zero()) diffs[key] = matrix_json(C.d(n));
    json lv = json::array();
    for (int l : FC.levels(n)) lv.push_back(co ? -l : l);
    filt[key] = lv;
  }
  return json{{"kind", "complex"}, {"ring", C.ring().name()}, {"cochain", co},
              {"degrees", degrees}, {"differentials", diffs}, {"filtration", filt}};
}

FilteredComplex parse_filtered(const json& j) {
  std::string kind = j.value("kind", "complex");
  if (kind == "complex") return parse_complex(j);
  if (kind == "semisimplicial") return chain_complex_of(parse_semisimplicial(j), Ring::parse(j.value("ring", "Z")));
  throw Error(ErrorKind::BadInput, "expected a complex or semi-simplicial set, got kind '" + kind + "'");
}

GroupFile parse_group(const json& j) {
  return guarded("group", [&] {
    auto names = j.at("elements").get<std::vector<std::string>>();
    std::vector<std::vector<std::uint32_t>> table;
    for (auto& row : j.at("table")) {
      table.emplace_back();
      for (auto& v : row) table.back().push_back(element_ref(v, names));
    }
    GroupFile g;
    g.G = load_group(names, table);
    if (j.contains("normal")) {
      std::vector<std::uint32_t> N;
      for (auto& v : j.at("normal")) N.push_back(element_ref(v, names));
      std::sort(N.begin(), N.end());
      g.normal = N;
    }
    if (j.contains("module")) g.module = j.at("module");
    return g;
  });
}

json to_json(const GroupFile& g) {
  json j{{"kind", "group"}, {"elements", g.G.elements}, {"table", g.G.table}};
  if (g.normal) {
    json n = json::array();
    for (auto i : *g.normal) n.push_back(g.G.elements[i]);
    j["normal"] = n;
  }
  if (!g.module.is_null()) j["module"] = g.module;
  return j;
}

GroupModule parse_module(const json& j, const FiniteGroupData& G, const Ring& ring) {
  if (j.is_null()) return GroupModule::trivial(G, ring);
  return guarded("module", [&] {
    std::size_t k = j.at("rank").get<std::size_t>();
    if (!j.contains("action") || j.at("action").empty()) return GroupModule::trivial(G, ring, k);
    std::vector<std::optional<ExactMatrix>> act(G.order());
    act[0] = ExactMatrix::identity(ring, k);
    std::vector<std::uint32_t> gens;
    for (auto& [name, m] : j.at("action").items()) {
      auto g = G.index(name);
      act[g] = parse_matrix(m, ring, k, k, "action of " + name);
      gens.push_back(g);
    }
    // Close up under products of the listed elements.
    std::vector<std::uint32_t> frontier{0};
    std::vector<bool> seen(G.order(), false);
    seen[0] = true;
    while (!frontier.empty()) {
      std::vector<std::uint32_t> next;
      for (auto a : frontier)
        for (auto s : gens) {
          auto b = G.mul(a, s);
          if (seen[b]) continue;
          seen[b] = true;
          if (!act[b]) act[b] = (*act[a]) * (*act[s]);
          next.push_back(b);
        }
      frontier = std::move(next);
    }
    std::vector<ExactMatrix> out;
    for (std::size_t g = 0; g < G.order(); ++g) {
      if (!seen[g]) throw Error(ErrorKind::BadInput, "action does not determine element " + G.elements[g]);
      out.push_back(*act[g]);
    }
    return make_module(G, ring, k, std::move(out));
  });
}

EquivariantFile parse_equivariant(const json& j) {
  return guarded("equivariant complex", [&] {
    EquivariantFile e;
    e.complex = parse_complex(j.at("complex")).complex();
    e.group = parse_group(j.at("group"));
    for (auto& [k, v] : j.at("action").items()) {
      int n = e.complex.internal(int_key(k));
      e.action.perm[n] = v.get<std::vector<std::vector<std::uint32_t>>>();
    }
    e.module = parse_module(j.value("module", json()), e.group.G, e.complex.ring());
    return e;
  });
}

json to_json(const EquivariantFile& e) {
  json act = json::object();
  for (auto& [n, perms] : e.action.perm) act[std::to_string(e.complex.display(n))] = perms;
  json c = to_json(FilteredComplex::trivial(e.complex));
  c.erase("filtration");
  json mod{{"rank", e.module.rank}};
  json ma = json::object();
  for (std::size_t g = 1; g < e.group.G.order(); ++g) ma[e.group.G.elements[g]] = matrix_json(e.module.action[g]);
  mod["action"] = ma;
  return json{{"kind", "equivariant"}, {"complex", c}, {"group", to_json(e.group)}, {"action", act}, {"module", mod}};
}

FgModulePresentation parse_module_factors(const json& j, const Ring& ring) {
  const json& f = j.is_object() ? j.at("factors") : j;
  std::vector<Int> fs;
  for (auto& v : f) {
    if (v.is_number_integer()) fs.emplace_back(v.get<long long>());
    else if (v.is_string()) fs.emplace_back(v.get<std::string>());
    else throw Error(ErrorKind::BadInput, "invariant factors must be integers, got " + v.dump());
  }
  return FgModulePresentation::detached(ring, fs);
}

json factors_json(const FgModulePresentation& m) {
  json a = json::array();
  for (auto& f : m.invariantFactors) a.push_back(int_json(f));
  return a;
}

FormalFixture parse_formal(const json& j) {
  return guarded("formal page", [&] {
    FormalFixture F;
    FormalPage& P = F.page;
    P.ring = Ring::parse(j.value("ring", "Z"));
    std::string o = j.value("orientation", "homological");
    if (o == "homological") P.orientation = Orientation::Homological;
    else if (o == "cohomological") P.orientation = Orientation::Cohomological;
    else throw Error(ErrorKind::BadInput, "orientation must be homological or cohomological, got '" + o + "'");
    P.r = j.value("start", 2);
    F.description = j.value("description", "");
    for (auto& [k, v] : j.at("entries").items()) P.entries[pos_key(k)] = parse_module_factors(v, P.ring);
    if (j.contains("differentials"))
      for (auto& [k, list] : j.at("differentials").items()) {
        int s = int_key(k);
        for (auto& d : list) {
          auto from = d.at("from").get<std::pair<int, int>>();
          Position tgt = P.target(from, s);
          if (d.contains("to") && d.at("to").get<std::pair<int, int>>() != tgt)
            throw Error(ErrorKind::BadInput, "d_" + k + " from (" + pos_str(from) + ") lands at (" + pos_str(tgt) + ")");
          const json& m = d.at("matrix");
          std::size_t rows = P.size(tgt), cols = P.size(from);
          if (s != P.r) rows = m.size(), cols = m.empty() ? 0 : m.at(0).size();
          P.differentials[{s, from.first, from.second}] =
              parse_matrix(m, P.ring, rows, cols, "d_" + k + " at (" + pos_str(from) + ")");
        }
      }
    if (j.contains("constraints"))
      for (auto& c : j.at("constraints")) F.constraints.push_back({parse_axis(c.at("axis")), c.value("reason", "")});
    if (j.contains("target"))
      for (auto& [k, v] : j.at("target").items()) F.target[int_key(k)] = parse_module_factors(v, P.ring);
    validate_formal(P);
    return F;
  });
}

json to_json(const FormalFixture& F) {
  const FormalPage& P = F.page;
  json entries = json::object(), diffs = json::object();
  for (auto& [pq, m] : P.entries) entries[pos_str(pq)] = json{{"factors", factors_json(m)}};
  for (auto& [key, M] : P.differentials) {
    auto [s, p, q] = key;
    Position t = P.target({p, q}, s);
    diffs[std::to_string(s)].push_back(json{{"from", {p, q}}, {"to", {t.first, t.second}}, {"matrix", matrix_json(M)}});
  }
  json j{{"kind", "formal"},
         {"ring", P.ring.name()},
         {"orientation", P.orientation == Orientation::Homological ? "homological" : "cohomological"},
         {"start", P.r},
         {"entries", entries},
         {"differentials", diffs}};
  if (!F.description.empty()) j["description"] = F.description;
  if (!F.constraints.empty()) {
    json cs = json::array();
    for (auto& [a, why] : F.constraints) cs.push_back(json{{"axis", axis_str(a)}, {"reason", why}});
    j["constraints"] = cs;
  }
  if (!F.target.empty()) {
    json t = json::object();
    for (auto& [n, m] : F.target) t[std::to_string(n)] = json{{"factors", factors_json(m)}};
    j["target"] = t;
  }
  return j;
}

FormalPage constrained_page(const FormalFixture& F) {
  FormalPage P = F.page;
  for (auto& [a, why] : F.constraints) P = edge_injectivity_constraint(P, a, why);
  return P;
}

std::string render_chart(const SpectralPage& E, ChartFormat fmt, std::optional<int> arrows) {
  std::map<Position, FgModulePresentation> shown;
  for (auto& [pq, m] : E.entries) shown[E.display(pq)] = m;
  if (fmt == ChartFormat::Json) return chart_json(E.r, E.ring, shown);
  Grid g;
  for (auto& [pq, m] : shown) g.labels[pq] = m.label();
  g.filler = [&](Position pq) {
    Position in = E.internal(pq);
    int n = in.first + in.second;
    bool ok = !E.window || (n >= E.window->first && n <= E.window->second);
    return std::string(ok ? "0" : "·");
  };
  std::string out = "E_" + std::to_string(E.r) + "\n" + draw(g);
  if (arrows && *arrows == E.r)
    for (auto& [pq, M] : E.differentials)
      if (!M.is_zero()) out += arrow_line(E.r, E.display(pq), E.display(E.target(pq)), M);
  return out;
}

std::string render_chart(const FormalPage& P, ChartFormat fmt, std::optional<int> arrows) {
  if (fmt == ChartFormat::Json) return chart_json(P.r, P.ring, P.entries);
  Grid g;
  for (auto& [pq, m] : P.entries) g.labels[pq] = m.label();
  g.filler = [](Position) { return std::string("0"); };
  std::string out = "E_" + std::to_string(P.r) + "\n" + draw(g);
  if (arrows)
    for (auto& [key, M] : P.differentials) {
      auto [s, p, q] = key;
      if (s == *arrows && !M.is_zero()) out += arrow_line(s, {p, q}, P.target({p, q}, s), M);
    }
  for (auto& n : P.notes) out += "note: " + n + "\n";
  return out;
}

}  // namespace ssq::io
