#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrcohom/errors.hpp"
#include "arrcohom/matq.hpp"
#include "arrcohom/rat.hpp"
#include "arrcohom/rng.hpp"

namespace arrcohom {

/// A central arrangement of hyperplanes through the origin of Q^n, given by
/// one nonzero normal vector per hyperplane. The stored order is the input
/// order and is significant: broken-circuit bases downstream depend on it.
/// Invariant: no two normals are proportional (reduced divisor).
struct Arrangement {
    std::string name;
    size_t n = 0;                    // ambient dimension
    std::vector<VecQ> hyperplanes;   // d normal vectors of length n
    std::vector<std::string> warnings;
    bool essentialized_from_higher = false;
    size_t original_n = 0;

    size_t d() const { return hyperplanes.size(); }

    MatQ normal_matrix() const { return MatQ::from_rows(hyperplanes); }

    bool is_essential() const { return normal_matrix().rank() == n; }
};

namespace detail {

inline bool proportional(const VecQ& a, const VecQ& b) {
    // a, b nonzero of equal length: proportional iff all 2x2 minors vanish.
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

}  // namespace detail

/// Validate a raw normal list: reject zero rows, collapse proportional pairs
/// (keeping the first occurrence) with a warning.
inline Arrangement make_arrangement(std::string name, size_t n,
                                    const std::vector<VecQ>& normals) {
    Arrangement arr;
    arr.name = std::move(name);
    arr.n = n;
    arr.original_n = n;
    if (n == 0) throw DimensionMismatch("arrangement: ambient dimension zero");
    for (size_t i = 0; i < normals.size(); ++i) {
        if (normals[i].size() != n)
            throw DimensionMismatch("arrangement: normal " + std::to_string(i + 1) +
                                    " has wrong length");
        if (is_zero_vec(normals[i]))
            throw ZeroNormal("arrangement: normal " + std::to_string(i + 1) +
                             " is zero");
        bool dup = false;
        for (const VecQ& kept : arr.hyperplanes) {
            if (detail::proportional(kept, normals[i])) {
                arr.warnings.push_back("collapsed proportional normal at input position " +
                                       std::to_string(i + 1));
                dup = true;
                break;
            }
        }
        if (!dup) arr.hyperplanes.push_back(normals[i]);
    }
    if (arr.hyperplanes.empty())
        throw InputError("arrangement: no hyperplanes");
    return arr;
}

/// Parse the on-disk JSON format:
///   {"name": str, "ambient_dim": n, "hyperplanes": [["p/q", ...] x d]}
inline Arrangement load_arrangement_json(const nlohmann::json& j) {
    if (!j.contains("ambient_dim") || !j.contains("hyperplanes"))
        throw InputError("arrangement JSON: missing ambient_dim or hyperplanes");
    size_t n = j.at("ambient_dim").get<size_t>();
    std::string name = j.value("name", std::string("unnamed"));
    std::vector<VecQ> normals;
    for (const auto& row : j.at("hyperplanes")) {
        VecQ v;
        for (const auto& cell : row) v.push_back(Rat::parse(cell.get<std::string>()));
        normals.push_back(std::move(v));
    }
    return make_arrangement(name, n, normals);
}

inline Arrangement load_arrangement_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open arrangement file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("arrangement JSON parse error in " + path + ": " + e.what());
    }
    return load_arrangement_json(j);
}

inline nlohmann::json arrangement_to_json(const Arrangement& a) {
    nlohmann::json j;
    j["name"] = a.name;
    j["ambient_dim"] = a.n;
    nlohmann::json rows = nlohmann::json::array();
    for (const VecQ& h : a.hyperplanes) {
        nlohmann::json row = nlohmann::json::array();
        for (const Rat& x : h) row.push_back(x.str());
        rows.push_back(row);
    }
    j["hyperplanes"] = rows;
    return j;
}

/// Braid arrangement on m coordinates: hyperplanes x_i - x_j, ordered by
/// (j, i) so the first three are mutually concurrent for m >= 3.
inline Arrangement braid_arrangement(size_t m) {
    if (m < 2) throw InputError("braid: need m >= 2");
    std::vector<VecQ> normals;
    for (size_t j = 2; j <= m; ++j) {
        for (size_t i = 1; i < j; ++i) {
            VecQ v(m);
            v[i - 1] = Rat(1);
            v[j - 1] = Rat(-1);
            normals.push_back(std::move(v));
        }
    }
    return make_arrangement("braid(" + std::to_string(m) + ")", m, normals);
}

/// Generic arrangement of d hyperplanes in Q^n via the moment curve: normals
/// (1, t, t^2, ..., t^{n-1}) at seeded distinct nonzero parameters t. Every
/// n-subset is a Vandermonde system, so the matroid is uniform by
/// construction, not merely with high probability.
inline Arrangement generic_arrangement(size_t d, size_t n, uint64_t seed) {
    if (n == 0 || d == 0) throw InputError("generic: need d, n >= 1");
    Rng rng(seed ^ 0xa5a5a5a5ULL);
    std::vector<int64_t> ts;
    while (ts.size() < d) {
        int64_t t = rng.next_in(-10000, 10000);
        if (t == 0) continue;
        bool dup = false;
        for (int64_t u : ts) dup = dup || (u == t);
        if (!dup) ts.push_back(t);
    }
    std::vector<VecQ> normals;
    for (int64_t t : ts) {
        VecQ v(n);
        Rat p(1);
        for (size_t k = 0; k < n; ++k) {
            v[k] = p;
            p *= Rat(mpz_class(t));
        }
        normals.push_back(std::move(v));
    }
    std::ostringstream nm;
    nm << "generic(d=" << d << ",n=" << n << ",seed=" << seed << ")";
    return make_arrangement(nm.str(), n, normals);
}

/// Exact essentialization: rewrite the normals in a basis of their own span.
/// Subset ranks are preserved verbatim (the basis change is invertible on the
/// span), so the intersection lattice is untouched.
inline Arrangement essentialize(const Arrangement& a) {
    MatQ N = a.normal_matrix();
    MatQ R;
    std::vector<size_t> pivots = N.rref(R);
    size_t r = pivots.size();
    if (r == a.n) return a;
    // Basis of the row space: the first r rows of the RREF.
    MatQ B(r, a.n);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < a.n; ++j) B(i, j) = R(i, j);
    // Each normal a_i = c_i * B with c_i read off at the pivot columns
    // (B has unit pivot columns in RREF).
    std::vector<VecQ> coords;
    for (const VecQ& h : a.hyperplanes) {
        VecQ c(r);
        for (size_t k = 0; k < r; ++k) c[k] = h[pivots[k]];
        // Verify c * B == h; anything else means the row was outside the span,
        // which cannot happen.
        VecQ check(a.n);
        for (size_t j = 0; j < a.n; ++j)
            for (size_t k = 0; k < r; ++k) check[j] += c[k] * B(k, j);
        if (!(check == h)) throw InternalError("essentialize: coordinate solve failed");
        coords.push_back(std::move(c));
    }
    Arrangement out = make_arrangement(a.name, r, coords);
    out.essentialized_from_higher = true;
    out.original_n = a.n;
    out.warnings = a.warnings;
    out.warnings.push_back("essentialized from ambient dimension " +
                           std::to_string(a.n) + " to " + std::to_string(r));
    return out;
}

}  // namespace arrcohom
