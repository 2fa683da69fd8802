#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ssq/cellio.hpp"

using namespace ssq;
using io::json;

namespace {

io::ChartFormat chart_format(const std::string& s) {
  if (s == "ascii") return io::ChartFormat::Ascii;
  if (s == "json") return io::ChartFormat::Json;
  throw Error(ErrorKind::BadInput, "--render must be ascii or json");
}

std::string kind_of(const json& j) { return j.value("kind", "complex"); }

std::string deg_name(bool co, int n) { return (co ? "H^" : "H_") + std::to_string(n); }

Ring group_ring(const std::string& s) { return Ring::parse(s); }

FilteredComplex lhs_filtration(const io::GroupFile& g, const Ring& R, int truncate) {
  if (!g.normal) throw Error(ErrorKind::BadInput, "group file has no normal subgroup");
  auto E = make_extension(g.G, *g.normal);
  return column_filtration(lhs_double_complex(E, R, truncate));
}

// Engine towers carry internal filtration indices; formal ones are already displayed.
void print_tower(const ExtensionTower& T, bool co, bool internal = true) {
  for (auto& s : T.steps) {
    std::cout << "p=" << (co && internal ? -s.p : s.p) << "  E_inf=" << s.quotient.label() << "  middles:";
    for (auto& m : s.middles) std::cout << " " << m.label();
    std::cout << "\n";
  }
  std::cout << deg_name(co, T.n) << (T.resolved ? " = " : " in {");
  for (std::size_t i = 0; i < T.candidates.size(); ++i) std::cout << (i ? ", " : "") << T.candidates[i].label();
  std::cout << (T.resolved ? "" : "}") << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Spectral sequences of filtered complexes, double complexes and group extensions"};
  app.require_subcommand(1);
  std::string input, render = "ascii", ring = "F2";
  std::optional<int> r, arrows, degree, turnTo;
  int truncate = 5, maxDeg = 3;

  auto* hom = app.add_subcommand("homology", "homology of a complex, semi-simplicial set or equivariant complex");
  hom->add_option("input", input)->required();

  auto* pages = app.add_subcommand("pages", "pages of a filtered complex");
  pages->add_option("input", input)->required();
  pages->add_option("--r", r, "single page to print");
  pages->add_option("--render", render);
  pages->add_option("--arrows", arrows, "list the nonzero d_r");

  auto* einf = app.add_subcommand("einf", "E_infinity next to the graded homology");
  einf->add_option("input", input)->required();
  einf->add_option("--render", render);

  auto* ext = app.add_subcommand("extensions", "extension candidates on one diagonal");
  ext->add_option("input", input)->required();
  ext->add_option("--degree", degree)->required();
  ext->add_option("--ring", ring, "coefficients for group files");
  ext->add_option("--truncate", truncate);

  auto* lhs = app.add_subcommand("lhs", "pages of the extension double complex of a group file");
  lhs->add_option("input", input)->required();
  lhs->add_option("--ring", ring);
  lhs->add_option("--truncate", truncate);
  lhs->add_option("--r", r);
  lhs->add_option("--render", render);
  lhs->add_option("--arrows", arrows);

  auto* formal = app.add_subcommand("formal", "replay a formal page");
  formal->add_option("input", input)->required();
  formal->add_option("--turn-to", turnTo);
  formal->add_option("--render", render);
  formal->add_option("--arrows", arrows);

  auto* poin = app.add_subcommand("poincare", "dimensions of cohomology (group files) or homology (complexes)");
  poin->add_option("input", input)->required();
  poin->add_option("--max", maxDeg)->required();
  poin->add_option("--ring", ring);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  json j = io::load_json(input);
  auto fmt = chart_format(render);

  if (hom->parsed()) {
    BasedComplex C;
    if (kind_of(j) == "equivariant") {
      auto e = io::parse_equivariant(j);
      C = tensor_over_group(e.complex, e.group.G, e.action, e.module);
    } else {
      C = io::parse_filtered(j).complex();
    }
    auto H = homology(C);
    for (auto& [n, m] : H.byDegree) std::cout << deg_name(C.cohomological(), n) << " = " << m.label() << "\n";
    return 0;
  }
  if (pages->parsed()) {
    SpectralSequence ss(io::parse_filtered(j));
    int last = r ? *r : ss.stabilization_index();
    for (int k = r ? *r : 0; k <= last; ++k) std::cout << io::render_chart(ss.page(k), fmt, arrows);
    return 0;
  }
  if (einf->parsed()) {
    auto FC = io::parse_filtered(j);
    auto E = infinity_page(FC);
    std::cout << io::render_chart(E, fmt);
    if (fmt == io::ChartFormat::Ascii) {
      std::cout << "graded homology\n" << io::render_chart(graded_homology(FC), fmt);
    }
    return 0;
  }
  if (ext->parsed()) {
    std::string k = kind_of(j);
    if (k == "formal") {
      auto F = io::parse_formal(j);
      auto P = turn_to_infinity(io::constrained_page(F));
      print_tower(diagonal_extensions(P, *degree), P.orientation == Orientation::Cohomological, false);
    } else if (k == "group") {
      auto FC = lhs_filtration(io::parse_group(j), group_ring(ring), truncate);
      print_tower(extension_tower(FC, *degree), true);
    } else {
      auto FC = io::parse_filtered(j);
      print_tower(extension_tower(FC, *degree), FC.cohomological());
    }
    return 0;
  }
  if (lhs->parsed()) {
    SpectralSequence ss(lhs_filtration(io::parse_group(j), group_ring(ring), truncate));
    std::cout << io::render_chart(ss.page(r ? *r : 2), fmt, arrows);
    return 0;
  }
  if (formal->parsed()) {
    auto F = io::parse_formal(j);
    auto P = io::constrained_page(F);
    if (fmt == io::ChartFormat::Ascii) {
      auto rep = forced_zero_scan(P, formal_reach(P));
      for (auto& [s, list] : rep.unforced) {
        if (list.empty()) continue;
        std::cout << "unforced d_" << s << ":";
        for (auto pq : list) std::cout << " (" << pq.first << "," << pq.second << ")";
        std::cout << "\n";
      }
      if (rep.collapsesAt) std::cout << "collapses at E_" << *rep.collapsesAt << "\n";
    }
    P = turnTo ? turn_to(P, *turnTo) : P;
    std::cout << io::render_chart(P, fmt, arrows);
    if (fmt == io::ChartFormat::Ascii && !F.target.empty()) {
      for (auto& c : check_target(turn_to_infinity(P), F.target)) {
        std::cout << "target " << c.n << ": " << c.target.label() << (c.consistent ? " consistent" : " inconsistent");
        if (c.coarse) std::cout << " (rank and order only)";
        std::cout << "\n";
      }
    }
    return 0;
  }
  if (poin->parsed()) {
    std::vector<std::size_t> dims;
    if (kind_of(j) == "group") {
      auto g = io::parse_group(j);
      Ring R = group_ring(ring);
      auto M = io::parse_module(g.module, g.G, R);
      auto C = cochain_complex(g.G, M, maxDeg + 1);
      dims = poincare_series(homology(C), maxDeg);
    } else {
      dims = poincare_series(homology(io::parse_filtered(j).complex()), maxDeg);
    }
    for (std::size_t i = 0; i < dims.size(); ++i) std::cout << (i ? " " : "") << dims[i];
    std::cout << "\n";
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "ssq: " << e.what() << "\n";
    return e.kind() == ErrorKind::ResourceCap ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "ssq: " << e.what() << "\n";
    return 1;
  }
}
