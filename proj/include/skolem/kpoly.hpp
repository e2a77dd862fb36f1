#pragma once

#include <utility>
#include <vector>

#include "skolem/field.hpp"

namespace skolem {

// Field shared by the coefficients (null when all are rational).
FieldPtr kpoly_field(const KPoly& f);
KPoly to_kpoly(const QPoly& p);
KPoly kpoly_in(const KPoly& f, const FieldPtr& K);

// Norm over Q: the product of the conjugates of f under the embeddings of K.
QPoly norm(const KPoly& f);

// Monic irreducible factors over K with multiplicities.
std::vector<std::pair<KPoly, int>> factor_over_field(const KPoly& f);

CInterval eval(const KPoly& f, const CInterval& x, mpfr_prec_t prec);

// Distinct complex roots of f, returned as algebraic numbers with multiplicities.
std::vector<std::pair<AlgebraicNumber, int>> roots_of(const KPoly& f);

}  // namespace skolem
