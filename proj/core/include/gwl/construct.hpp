#pragma once

#include <vector>

#include "gwl/group.hpp"

namespace gwl {

group make_cyclic(int n);
group make_dihedral(int n); // order 2n
group make_quaternion8();
group make_symmetric(int m); // order m!, m <= 8
group make_elementary_abelian(int p, int e);

struct product_maps {
    std::vector<int> proj_left;  // product index -> left factor index
    std::vector<int> proj_right; // product index -> right factor index
};

/// Direct product with lexicographic element order on (left, right)
/// component indices; (0,0) is the identity.
group direct_product(const group& a, const group& b, product_maps* maps = nullptr);

/// Central product (a x b) / {(z, phi(z)^-1) | z in z1}. phi is given as a
/// full element map on a's indices, restricted to z1; it must be an
/// isomorphism z1 -> z2 of central subgroups.
group central_product(const group& a, const group& b, const element_set& z1, const element_set& z2,
                      const std::vector<int>& phi);

} // namespace gwl
