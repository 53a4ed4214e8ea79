#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conflab/liealg.hpp"
#include "conflab/matrix.hpp"

namespace conflab {

/// Images of the abstract sl(2) generators (X, Y, Z) under a linear map.
struct Representation {
  Sl2Triple images;

  std::size_t dim() const { return images.X.rows(); }
  /// Homomorphism residuals; all zero for a genuine representation.
  TripleCheck residuals() const { return verify_sl2_triple(images); }
};

/// Wraps three matrices, throwing Error(Representation) unless they satisfy
/// the triple relations exactly.
Representation make_representation(ExactMatrix x, ExactMatrix y, ExactMatrix z);

/// The (d+1)-dimensional irreducible representation on the basis
/// v_0, ..., v_d with X v_k = (d/2 - k) v_k, Y v_k = k(d-k+1) v_{k-1} and
/// Z v_k = v_{k+1}/2.
Representation irreducible_rep(int d);

struct InvariantFormSpace {
  Representation rep;
  /// Symmetric Q with rho(xi)^T Q + Q rho(xi) = 0 for each generator.
  std::vector<ExactMatrix> basis;
};

InvariantFormSpace invariant_symmetric_forms(const Representation& rep);

struct Inertia {
  int pos = 0;
  int neg = 0;
  int null = 0;
  bool operator==(const Inertia&) const = default;
};

/// Sylvester inertia by exact symmetric congruence reduction.
Inertia signature(const ExactMatrix& q);

struct HighestWeightData {
  Vec<Rational> vector;  ///< first nonzero coordinate equal to 1
  Rational weight;
  /// Columns v, Z v, Z^2 v, ... up to the last nonzero power.
  ExactMatrix cyclic;
};

HighestWeightData highest_weight_data(const Representation& rep);

/// True when the column span of `basis` is invariant under all three images.
bool is_invariant_subspace(const Representation& rep, const ExactMatrix& basis);

enum class CaseLabel {
  IsotropicPlane,
  Lorentz3_TrivialComplement,
  Lorentz3_SecondBlock,
  Signature21,
  Signature23,
};

const std::vector<CaseLabel>& all_case_labels();
std::string to_string(CaseLabel label);
/// Accepts the enum spelling or the short forms "1", "2a", "2b", "3", "4".
CaseLabel parse_case_label(const std::string& text);

/// Which sign of the input triple satisfied the bracket relations.
enum class TripleSign { Direct, Negated };
std::string to_string(TripleSign sign);

struct Classification {
  CaseLabel label;
  TripleSign sign = TripleSign::Direct;
  Vec<Rational> highest_weight_vector;
  Rational highest_weight;
  std::size_t cyclic_dim = 0;
  Inertia cyclic_signature;
  /// Smallest k with rho(Y)^k = 0 on the cyclic subspace.
  unsigned nilpotency_on_cyclic = 0;
  /// Diagonal of rho(X) in the adapted basis (slot order e_1, ..., e_{n+2}).
  Vec<Rational> normal_form;
  /// Adapted basis as columns. `exact_basis` is set when every step of the
  /// construction stayed rational; `basis` always holds the floating copy.
  std::optional<ExactMatrix> exact_basis;
  RealMatrix basis;
  /// max |B^T S B - S| and max |B^{-1} rho(X) B - diag(normal_form)|.
  double gram_residual = 0;
  double normal_form_residual = 0;

  bool exact() const { return exact_basis.has_value(); }
};

/// Resolves the case of an sl(2) triple inside so(2,n) and builds an adapted
/// basis in which the ambient form is standard and rho(X) is diagonal.
Classification classify_embedding(const Representation& rep, const So2nForm& form);

/// Explicit model triple for each case inside so(2,n).
Representation build_case(CaseLabel label, int n);

/// Eigenvalue multiset of rho(X) expected in each case, in slot order.
Vec<Rational> expected_normal_form(CaseLabel label, int n);

}  // namespace conflab
