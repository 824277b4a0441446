#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caplab/space.hpp"

namespace caplab {

/// Points (a, b, y) with d(y, b) > d(y, a) ⊕ d(b, a).
struct RegularityTriple {
	PointId a, b, y;
	Weight lhs, rhs;
};

/// Points (x, y, c) with d(y, c) > d(y, x) ⊕ d(x, c).
struct DiagonalityTriple {
	PointId x, y, c;
	Weight lhs, rhs;
};

/// A violation of the selection form of ⊕-regularity:
///   λ(l[H])(y0) > λ(S(H))(y0) ⊕ max_{a∈A} λ(S(a))(l(a)).
/// The index set A is `labels`; `l`, `selection` and `h` are indexed by it.
struct RegularityWitness {
	std::vector<std::string> labels;
	std::vector<PointId> l;
	std::vector<PointSet> selection;
	std::vector<bool> h;
	PointId y0 = 0;
	Weight lhs, rhs;

	std::size_t size() const { return labels.size(); }
	PointSet h_image() const;     // l(core H)
	PointSet h_selected() const;  // core S(H)
	Weight selection_defect(const FiniteCapSpace& y) const;  // max_a λ(S(a))(l(a))
};

/// B ⊆ S^(α) (and, in pointwise mode, x ∈ S^(α)) for which no nonempty
/// C ⊆ S satisfies both strictness clauses.
struct StrictnessWitness {
	std::optional<PointId> x;
	PointSet b;
};

/// Fast path. nullopt means Y is ⊕-regular. The returned triple has the smallest
/// violated value d(y, b); ties are broken lexicographically on (a, b, y).
std::optional<RegularityTriple> is_regular(const FiniteCapSpace& y, Tensor t);

PointSet regularity_points(const FiniteCapSpace& y, Tensor t);

/// Exhaustive search of the selection form over index sets with at most k
/// elements. The search is up to relabelling of A and restricted to H = A with
/// pairwise distinct (l(a), S(a)): an index outside H, or a repeated pair,
/// can be deleted without changing the left side or raising the right side,
/// so these restrictions lose no violation. The first violation in
/// (|A|, lexicographic) order is returned.
std::optional<RegularityWitness> check_selection_regularity(const FiniteCapSpace& y, Tensor t,
                                                            std::size_t k);

/// A = {b}, l = inclusion, S(b) = {a}↑, H = {b}↑, y0 = y. Throws
/// std::logic_error if the triple does not violate the fast path.
RegularityWitness extract_selection_witness(const FiniteCapSpace& y, Tensor t,
                                            const RegularityTriple& triple);

/// Recomputes both sides of a witness in y.
std::pair<Weight, Weight> witness_sides(const FiniteCapSpace& y, Tensor t,
                                        const RegularityWitness& w);

/// Fast path; nullopt means ⊕-diagonal. Same tie-breaking as is_regular on (x, y, c).
std::optional<DiagonalityTriple> is_diagonal(const FiniteCapSpace& y, Tensor t);

struct Classification {
	bool pre_approach = true;
	bool approach = false;
	bool non_archimedean_approach = false;
	bool regular = false;
	bool strongly_regular = false;
	bool convergence_embedded = false;
	bool topological = false;
};

Classification classify(const FiniteCapSpace& y);

/// α-⊕-strictness of the subspace S (pointwise or uniform).
std::optional<StrictnessWitness> is_strict(const FiniteCapSpace& x, PointSet s, const Weight& alpha,
                                           Tensor t, bool uniform);

/// α-⊕-strict for every α of the space's grid (α = ∞ always holds).
bool is_strict_all(const FiniteCapSpace& x, PointSet s, Tensor t, bool uniform);

} // namespace caplab
