#include "ssq/complex.hpp"

namespace ssq {

namespace {

const std::vector<std::string> kNoNames;

void check_dd(const BasedComplex& C) {
  for (int n : C.degrees()) {
    const ExactMatrix& dn = C.d(n);
    const ExactMatrix& dm = C.d(n - 1);
    if (dn.cols() == 0 || dm.cols() == 0) continue;
    for (std::size_t j = 0; j < dn.cols(); ++j)
      if (!dm.apply(dn.column(j)).empty())
        throw Error(ErrorKind::NotAComplex, "d∘d != 0 in degree " + std::to_string(C.display(n)) + ", witness column '" +
                                                C.names(n)[j] + "'");
  }
}

}  // namespace

BasedComplex::BasedComplex(Ring ring, std::map<int, std::vector<std::string>> basis, std::map<int, ExactMatrix> diffs,
                           bool cohomological)
    : ring_(ring), cohomological_(cohomological) {
  for (auto& [n, names] : basis)
    if (!names.empty()) basis_[n] = std::move(names);
  for (auto& [n, names] : basis_)
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!index_.emplace(names[i], std::make_pair(n, i)).second)
        throw Error(ErrorKind::BadInput, "duplicate basis name '" + names[i] + "'");
  for (auto& [n, m] : diffs) {
    if (m.ring() != ring_) throw Error(ErrorKind::BadInput, "differential over the wrong ring");
    if (m.rows() != dim(n - 1) || m.cols() != dim(n))
      throw Error(ErrorKind::DimensionMismatch, "differential in degree " + std::to_string(display(n)) + " has shape " +
                                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!m.is_zero()) d_[n] = std::move(m);
  }
  for (auto& [n, names] : basis_) {
    if (!d_.count(n)) d_[n] = ExactMatrix(ring_, dim(n - 1), dim(n));
    if (!d_.count(n + 1)) d_[n + 1] = ExactMatrix(ring_, dim(n), dim(n + 1));
  }
  check_dd(*this);
}

std::size_t BasedComplex::dim(int n) const {
  auto it = basis_.find(n);
  return it == basis_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& BasedComplex::names(int n) const {
  auto it = basis_.find(n);
  return it == basis_.end() ? kNoNames : it->second;
}

const ExactMatrix& BasedComplex::d(int n) const {
  static const ExactMatrix empty;
  auto it = d_.find(n);
  return it == d_.end() ? empty : it->second;
}

std::vector<int> BasedComplex::degrees() const {
  std::vector<int> out;
  for (auto& [n, names] : basis_) out.push_back(n);
  return out;
}

int BasedComplex::min_degree() const { return basis_.empty() ? 0 : basis_.begin()->first; }
int BasedComplex::max_degree() const { return basis_.empty() ? 0 : basis_.rbegin()->first; }

std::size_t BasedComplex::total_dim() const {
  std::size_t t = 0;
  for (auto& [n, names] : basis_) t += names.size();
  return t;
}

std::pair<int, std::size_t> BasedComplex::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorKind::BadInput, "unknown basis element '" + name + "'");
  return it->second;
}

BasedComplex validate_complex(const BasedComplex& C) {
  check_dd(C);
  return C;
}

const FgModulePresentation* GradedModule::at(int shown) const {
  auto it = byDegree.find(shown);
  return it == byDegree.end() ? nullptr : &it->second;
}

std::size_t GradedModule::dim(int shown) const {
  auto m = at(shown);
  return m ? m->size() : 0;
}

FgModulePresentation homology_in(const BasedComplex& C, int shown) {
  int n = C.internal(shown);
  std::size_t k = C.dim(n);
  if (k == 0) return FgModulePresentation::free(C.ring(), 0);
  Submodule Z = kernel_basis(C.d(n));
  Submodule B = C.dim(n + 1) ? image_basis(C.d(n + 1)) : Submodule::zero(C.ring(), k);
  return subquotient(Z, B);
}

GradedModule homology(const BasedComplex& C) {
  GradedModule H;
  H.ring = C.ring();
  H.cohomological = C.cohomological();
  for (int n : C.degrees()) H.byDegree[C.display(n)] = homology_in(C, C.display(n));
  return H;
}

std::vector<std::size_t> poincare_series(const GradedModule& M, int maxDegree) {
  if (!M.ring.is_field()) throw Error(ErrorKind::NotAField, "Poincaré series needs field coefficients, got " + M.ring.name());
  std::vector<std::size_t> out;
  for (int i = 0; i <= maxDegree; ++i) out.push_back(M.dim(i));
  return out;
}

}  // namespace ssq
