#include "gwl/construct.hpp"

#include <algorithm>
#include <numeric>

namespace gwl {

namespace {

group from_table(std::vector<std::vector<int>> table, std::string name) {
    return group::trusted(table, std::move(name));
}

} // namespace

group make_cyclic(int n) {
    if (n < 1) throw error(errc::too_large, "cyclic order must be positive");
    if (n > 4096) throw error(errc::too_large, "cyclic order beyond table budget");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return from_table(std::move(t), "C" + std::to_string(n));
}

group make_dihedral(int n) {
    if (n < 1) throw error(errc::too_large, "dihedral parameter must be positive");
    if (n > 2048) throw error(errc::too_large, "dihedral order beyond table budget");
    const int m = 2 * n;
    // indices: r^i -> i, s r^i -> n + i, with r s = s r^-1
    auto id = [&](bool flip, int rot) { return (flip ? n : 0) + ((rot % n) + n) % n; };
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            bool fi = i >= n, fj = j >= n;
            int ri = i % n, rj = j % n;
            // (s^fi r^ri)(s^fj r^rj) = s^(fi+fj) r^(rj + ri * (fj ? -1 : 1))
            t[i][j] = id(fi != fj, fj ? rj - ri : rj + ri);
        }
    return from_table(std::move(t), "D" + std::to_string(n));
}

group make_quaternion8() {
    // 0:1 1:i 2:j 3:k 4:-1 5:-i 6:-j 7:-k
    static const int base[4][4] = {
        // 1    i    j    k   (row * column)
        {0, 1, 2, 3},
        {1, 4 + 0, 3, 4 + 2}, // i*i=-1 i*j=k i*k=-j
        {2, 4 + 3, 4 + 0, 1}, // j*i=-k j*j=-1 j*k=i
        {3, 2, 4 + 1, 4 + 0}, // k*i=j k*j=-i k*k=-1
    };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            int r = base[i % 4][j % 4];
            int sign = (i / 4 + j / 4 + r / 4) % 2;
            t[i][j] = (r % 4) + 4 * sign;
        }
    return from_table(std::move(t), "Q8");
}

group make_symmetric(int m) {
    if (m < 1 || m > 8) throw error(errc::too_large, "symmetric group parameter must be in [1,8]");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int n = int(perms.size());

    auto rank_of = [&](const std::vector<int>& q) {
        return int(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };

    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<int> comp(m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int x = 0; x < m; ++x) comp[x] = perms[i][perms[j][x]];
            t[i][j] = rank_of(comp);
        }
    return from_table(std::move(t), "S" + std::to_string(m));
}

group make_elementary_abelian(int p, int e) {
    if (p < 2 || e < 1) throw error(errc::too_large, "bad elementary abelian parameters");
    long long n = 1;
    for (int i = 0; i < e; ++i) {
        n *= p;
        if (n > 4096) throw error(errc::too_large, "elementary abelian order beyond table budget");
    }
    const int nn = int(n);
    std::vector<std::vector<int>> t(nn, std::vector<int>(nn));
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
            int a = i, b = j, s = 0, pw = 1;
            for (int d = 0; d < e; ++d) {
                s += ((a % p + b % p) % p) * pw;
                a /= p;
                b /= p;
                pw *= p;
            }
            t[i][j] = s;
        }
    return from_table(std::move(t), "E" + std::to_string(p) + "^" + std::to_string(e));
}

group direct_product(const group& a, const group& b, product_maps* maps) {
    const int na = a.order(), nb = b.order();
    if (int64_t(na) * nb > 20000) throw error(errc::too_large, "product order beyond table budget");
    const int n = na * nb;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
    if (maps) {
        maps->proj_left.resize(n);
        maps->proj_right.resize(n);
        for (int i = 0; i < n; ++i) {
            maps->proj_left[i] = i / nb;
            maps->proj_right[i] = i % nb;
        }
    }
    std::string name;
    if (!a.name().empty() && !b.name().empty()) name = a.name() + "x" + b.name();
    return from_table(std::move(t), std::move(name));
}

group central_product(const group& a, const group& b, const element_set& z1, const element_set& z2,
                      const std::vector<int>& phi) {
    if (!is_subgroup(a, z1) || !z1.is_subset_of(center(a)))
        throw error(errc::not_central, "z1 is not a central subgroup of the left factor");
    if (!is_subgroup(b, z2) || !z2.is_subset_of(center(b)))
        throw error(errc::not_central, "z2 is not a central subgroup of the right factor");
    if (int(phi.size()) != a.order())
        throw error(errc::not_isomorphism, "phi must map every left index");
    // phi restricted to z1 must be a bijective homomorphism onto z2
    element_set image(b.order());
    for (elem z : z1.elements()) {
        int y = phi[z];
        if (y < 0 || y >= b.order() || !z2.contains(y))
            throw error(errc::not_isomorphism, "phi does not map z1 into z2");
        if (image.contains(y)) throw error(errc::not_isomorphism, "phi is not injective on z1");
        image.add(y);
    }
    if (image.size() != z2.size()) throw error(errc::not_isomorphism, "phi is not onto z2");
    for (elem x : z1.elements())
        for (elem y : z1.elements())
            if (phi[a.mul(x, y)] != b.mul(phi[x], phi[y]))
                throw error(errc::not_isomorphism, "phi is not a homomorphism on z1");

    group prod = direct_product(a, b);
    const int nb = b.order();
    element_set kernel(prod.order());
    for (elem z : z1.elements()) kernel.add(z * nb + b.inv(phi[z]));
    kernel = generated_subgroup(prod, kernel);
    quotient q = quotient_group(prod, kernel);
    std::string name;
    if (!a.name().empty() && !b.name().empty()) name = "cp(" + a.name() + "," + b.name() + ")";
    q.grp.set_name(name);
    return q.grp;
}

} // namespace gwl
