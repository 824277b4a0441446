#pragma once

#include <string>
#include <vector>

#include "caplab/space.hpp"

namespace caplab {

inline constexpr PointId kUnassigned = static_cast<PointId>(-1);

/// A contraction f : S -> Y on a subspace S of X, to be extended at level α.
struct ExtensionProblem {
	FiniteCapSpace x;
	PointSet s;
	std::vector<PointId> f;  // indexed by points of X; kUnassigned outside S
	FiniteCapSpace y;
	Tensor tensor = Tensor::Plus;
	Weight alpha;

	/// Checks S ≠ ∅, f total on S with values in Y, and f a contraction on
	/// subspace(X, S). Throws std::invalid_argument otherwise.
	void check() const;
	/// f as a map from subspace(X, S).
	SpaceMap restricted_map() const;
};

/// Builds a problem from a map whose source is a restriction of `x`.
ExtensionProblem make_extension_problem(const FiniteCapSpace& x, const SpaceMap& f, Tensor t,
                                        Weight alpha);

struct ExtensionCandidate {
	PointSet domain;
	std::vector<PointId> g;  // indexed by points of X; kUnassigned outside the domain
	bool admissible = true;
	bool regular = false;
};

/// ⋂_ε F_S^ε(x) over the finite ε of X's grid.
PointSet candidate_targets(const ExtensionProblem& p, PointId x);

/// h(S, f, α) = {x ∈ S^(α) : candidate_targets(x) ≠ ∅}.
PointSet extension_domain(const ExtensionProblem& p);

/// All admissible extensions on h(S, f, α), in lexicographic order of the values
/// outside S. Throws std::length_error when more than `cap` would be produced.
std::vector<ExtensionCandidate> enumerate_extensions(const ExtensionProblem& p, bool regular_only,
                                                     std::size_t cap = 1'000'000);

/// g as a map from subspace(X, domain) to Y.
SpaceMap extension_map(const ExtensionProblem& p, const ExtensionCandidate& g);

struct ExtensionReport {
	bool precondition = false;  // S is α-⊕-strict
	std::string precondition_failure;
	PointSet domain;
	Weight bound;  // α ⊕ α
	std::vector<ExtensionCandidate> extensions;  // the ⊕-regular ones
	std::vector<Weight> defaults;                // m_⊕ of each
	bool holds = true;
};

ExtensionReport verify_extension_theorem(const ExtensionProblem& p);

} // namespace caplab
