#pragma once

// Exact rational polytopes {x : <a_i, x> <= b_i} with primitive integer
// normals: vertex enumeration, Delzant validation, hyperplane orthogonality,
// two-sided slab cuts, coordinate slices and freeness of subtorus actions.
//
// Coordinate axes in this API are 1-based.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gctoric/errors.hpp"
#include "gctoric/scalar.hpp"

namespace gct::polytope {

using QVec = std::vector<Rational>;
using ZVec = std::vector<Integer>;

/// Malformed polytope input: zero or non-primitive normal, duplicate facet, unbounded or empty set.
class PolytopeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnboundedPolytope : public PolytopeError {
public:
    using PolytopeError::PolytopeError;
};

class EmptyPolytope : public PolytopeError {
public:
    using PolytopeError::PolytopeError;
};

/// A slice is empty or not full-dimensional in its subspace.
class SliceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Facet {
    ZVec normal;
    Rational offset;

    friend bool operator==(const Facet& a, const Facet& b) { return a.normal == b.normal && a.offset == b.offset; }
    friend bool operator<(const Facet& a, const Facet& b) {
        return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
    }
};

class HPolytope {
public:
    /// Validates normals (nonzero, primitive), uniqueness and boundedness.
    /// Dimension 0 is the one-point polytope and takes no facets.
    HPolytope(int dim, std::vector<Facet> facets);

    /// Divides each (normal, offset) by the gcd of the normal and drops duplicates first.
    static HPolytope normalized(int dim, std::vector<std::pair<ZVec, Rational>> raw);

    int dim() const { return dim_; }
    const std::vector<Facet>& facets() const { return facets_; }

    /// Same facets in lexicographic order; equality of canonical forms is equality of inequality systems.
    HPolytope canonical() const;
    bool contains(const QVec& x) const;

    friend bool operator==(const HPolytope& a, const HPolytope& b) {
        return a.dim_ == b.dim_ && a.facets_ == b.facets_;
    }

private:
    int dim_;
    std::vector<Facet> facets_;
};

struct VertexData {
    QVec point;
    std::vector<int> active;  // indices of facets through the vertex (redundant inequalities excluded)
    std::vector<ZVec> edges;  // primitive directions to the adjacent vertices
};

/// All vertices, sorted lexicographically. Throws EmptyPolytope when the system is infeasible.
std::vector<VertexData> vertices(const HPolytope& p);

/// Indices of inequalities that do not support a facet (their tight set has dimension < k - 1).
std::vector<int> redundant_facets(const HPolytope& p);

/// Facets with redundant inequalities removed.
HPolytope irredundant(const HPolytope& p);

struct VertexVerdict {
    QVec point;
    bool simple = false;
    bool rational = false;
    bool smooth = false;
    std::optional<Integer> determinant;
    std::string reason;  // empty when the vertex passes
};

struct DelzantReport {
    bool delzant = false;
    bool full_dimensional = false;
    std::vector<VertexVerdict> vertices;
};

DelzantReport is_delzant(const HPolytope& p);

struct OrthWitness {
    std::string kind;  // "vertex-on-hyperplane" or "facet-not-orthogonal"
    std::optional<int> facet;
    QVec point;
};

struct OrthReport {
    bool ok = false;
    int axis = 0;
    std::vector<OrthWitness> witnesses;
};

/// Every face meeting {x_axis = 0} contains e_axis in its tangent space.
/// Throws SliceError when P misses the hyperplane.
OrthReport orth_check(const HPolytope& p, int axis);

/// Half the smallest nonzero |x_axis| over the vertices. Throws PreconditionError if orth_check fails.
Rational max_slab_delta(const HPolytope& p, int axis);

/// P cut by -delta <= x_axis <= delta, redundant facets removed.
/// Throws PreconditionError if orth_check fails or delta is not in (0, min nonzero |x_axis|).
HPolytope cut_slab(const HPolytope& p, int axis, const Rational& delta);

struct SliceResult {
    HPolytope polytope;
    bool delzant = false;
};

/// P cap {x_i = 0, i in axes} as a polytope in the remaining coordinates.
/// Throws SliceError if the result is empty or not full-dimensional (a point included).
SliceResult slice(const HPolytope& p, const std::set<int>& axes);

/// As slice, but a one-point result is returned as the dimension-0 polytope.
HPolytope slice_allow_point(const HPolytope& p, const std::set<int>& axes);

struct FreenessWitness {
    QVec point;                // vertex of the slice, in the coordinates of P
    std::vector<int> facets;   // facets containing the minimal face through it
    bool rank_condition = false;
    bool saturated = false;
};

struct FreenessReport {
    bool free = false;
    std::vector<FreenessWitness> offending;
};

/// For every face F meeting {x_i = 0, i in axes}: span{e_i} cap span{a_j : F in facet j} = 0, and the
/// integer span of both families is saturated in Z^k. Throws SliceError when the slice is empty.
FreenessReport freeness_check(const HPolytope& p, const std::set<int>& axes);

std::set<int> first_axes(int r);  // {1, ..., r}

// JSON: {"dim": k, "facets": [{"normal": [...], "offset": "p/q"}]}
HPolytope polytope_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const HPolytope& p);
nlohmann::ordered_json to_json(const QVec& v);
nlohmann::ordered_json to_json(const DelzantReport& r);
nlohmann::ordered_json to_json(const OrthReport& r);
nlohmann::ordered_json to_json(const FreenessReport& r);

}  // namespace gct::polytope
