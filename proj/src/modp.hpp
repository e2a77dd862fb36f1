#pragma once

#include <cstdint>
#include <vector>

#include "skolem/qpoly.hpp"

// Word-size modular polynomial helpers shared by the multi-modular algorithms.
namespace skolem::modp {

using u64 = std::uint64_t;
using MPoly = std::vector<u64>;  // mod-p polynomial, constant first, normalized

void trim(MPoly& a);
u64 inv_mod(u64 a, u64 p);
MPoly msub(const MPoly& a, const MPoly& b, u64 p);
MPoly mmul(const MPoly& a, const MPoly& b, u64 p);
void mdivmod(const MPoly& a, const MPoly& b, u64 p, MPoly* q, MPoly* r);
MPoly mmod(const MPoly& a, const MPoly& b, u64 p);
MPoly mmonic(MPoly a, u64 p);
MPoly mgcd(MPoly a, MPoly b, u64 p);
MPoly mxgcd(const MPoly& a, const MPoly& b, u64 p, MPoly& s, MPoly& t);
MPoly mderiv(const MPoly& a, u64 p);
MPoly reduce_mod(const ZVec& z, u64 p);
const std::vector<u64>& prime_list(std::size_t count);
u64 mod_of(const Integer& v, u64 p);
void crt(Integer& x, const Integer& M, u64 r, u64 p);
bool reconstruct_vector(const ZVec& acc, const Integer& M, std::vector<Rational>& out);

}  // namespace skolem::modp
