#pragma once

#include <vector>

#include "orbitkit/liecore.hpp"

namespace orbitkit::detail {

struct FamilyData {
  int size = 0;
  bool complex = false;
  std::vector<MatrixXcd> basis;
  FormKind form_kind = FormKind::None;
  MatrixXcd form;
};

FamilyData build_family(const AlgebraSpec& spec);
MatrixXcd symplectic_form(int n);
MatrixXcd hermitian_signature_form(int p, int q);

}  // namespace orbitkit::detail
