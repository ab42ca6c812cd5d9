#pragma once

#include "holoshear/coords.hpp"
#include "holoshear/fatgraph.hpp"
#include "holoshear/rmatrix.hpp"

#include <vector>

namespace holoshear {

// Holonomy of a closed edge path: the ordered product P_n E(z_n) ... P_1 E(z_1)
// with P_k the left/right turn matrix between consecutive edges. Defined up to
// overall sign and basepoint conjugation; traces are the stable data.
Mat2 holonomy(const FatGraph& g, const EdgePath& p, const GenShearVector& z);
Mat2 holonomy(const FatGraph& g, const EdgePath& p, const ShearVector& x, Lambda l);

// Partial products A_k = P_n E_n ... E_{k+1} P_k (0-based: frames[k] covers
// positions k..n-1); frames[n-1] = P_n.
std::vector<Mat2> prefix_frames(const FatGraph& g, const EdgePath& p,
                                const GenShearVector& z);
// J_k = Ad_{A_k} J1.
std::vector<LieVec> lievec_frames(const FatGraph& g, const EdgePath& p,
                                  const GenShearVector& z);

// Holonomy rebased at position k (conjugated by A_k^{-1}).
Mat2 holonomy_based_at(const FatGraph& g, const EdgePath& p, const GenShearVector& z, int k);

// Deformation cocycles. Both are ordered products of Ad_{A_k(x)} E(delta_k)
// with the frames taken at the undeformed point x.
Mat2 earthquake_cocycle(const FatGraph& g, const EdgePath& p, const ShearVector& x,
                        const ShearVector& x2, Lambda l, bool strict = false,
                        const ConstraintMap* cm = nullptr);
Mat2 grafting_cocycle(const FatGraph& g, const EdgePath& p, const ShearVector& x,
                      const LamVector& w, bool strict = false,
                      const ConstraintMap* cm = nullptr);

} // namespace holoshear
