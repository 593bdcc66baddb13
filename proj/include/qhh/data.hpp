#pragma once

// Problem instances used throughout the tests and sample configs.

#include "qhh/algebra.hpp"

#include <array>

namespace qhh {

// q_ij = q_ij for i < j given as units in a common Units{N}
inline Problem make_problem(int n, int N, int nformal, const std::map<std::pair<int, int>, Unit>& upper,
                            GroupDatum G, std::vector<std::string> names = {})
{
    return Problem(QuantumDatum(n, N, nformal, upper, std::move(names)), std::move(G));
}

inline Unit formal_unit(int idx, int power = 1)
{
    Unit u;
    u.e[idx] = power;
    return u;
}

// two generators, q_12 = q formal; G cyclic of order m with generator characters chi
inline Problem formal_plane(int m = 1, std::vector<Unit> chi = {Unit{}, Unit{}}, int N = 1)
{
    return make_problem(2, N, 1, {{{0, 1}, formal_unit(0)}}, make_cyclic_group(m, chi, N), {"q"});
}

// q_12 = zeta_d and G = <g> of order d acting by g.x1 = q x1, g.x2 = q^-1 x2
inline Problem quantum_action_plane(int d)
{
    Units U{d};
    return make_problem(2, d, 0, {{{0, 1}, U.zeta(1)}}, make_cyclic_group(d, {U.zeta(1), U.zeta(-1)}, d));
}

// q_12 = -1, trivial group: the commutative truncated polynomial ring
inline Problem commutative_plane()
{
    Units U{2};
    return make_problem(2, 2, 0, {{{0, 1}, U.minus_one()}}, trivial_group(2, 2));
}

// q_12 = 1, trivial group
inline Problem exterior_plane()
{
    return make_problem(2, 1, 0, {{{0, 1}, Unit{}}}, trivial_group(2, 1));
}

// n = 3 with all q_ij formal and independent
inline Problem formal_space(int m = 1, std::vector<Unit> chi = {Unit{}, Unit{}, Unit{}}, int N = 1)
{
    return make_problem(3, N, 3,
                        {{{0, 1}, formal_unit(0)}, {{0, 2}, formal_unit(1)}, {{1, 2}, formal_unit(2)}},
                        make_cyclic_group(m, chi, N), {"q12", "q13", "q23"});
}

// Root-of-unity data of order d for n generators: q_ij = zeta_d^{e_ij} with
// a fixed exponent pattern, and G cyclic of order d with generator characters
// zeta_d^{c_l}.
inline Problem root_of_unity_problem(int n, int d, const std::vector<int>& q_exp, const std::vector<int>& chi_exp)
{
    Units U{d};
    std::map<std::pair<int, int>, Unit> up;
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            up[{i, j}] = U.zeta(q_exp[idx++]);
    std::vector<Unit> chi;
    for (int c : chi_exp)
        chi.push_back(U.zeta(c));
    return make_problem(n, d, 0, up, make_cyclic_group(d, chi, d));
}

// The symmetric group S3 with trivial characters; elements 0..5, 0 the identity.
inline GroupDatum symmetric_group_s3(int n, int N)
{
    // permutations of {0,1,2} as images; composition (a*b)(x) = a(b(x))
    std::vector<std::array<int, 3>> el{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::vector<int>> mult(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{el[a][el[b][0]], el[a][el[b][1]], el[a][el[b][2]]};
            for (int k = 0; k < 6; ++k)
                if (el[k] == c)
                    mult[a][b] = k;
        }
    return GroupDatum(mult, std::vector<std::vector<Unit>>(6, std::vector<Unit>(n)), N);
}

} // namespace qhh
