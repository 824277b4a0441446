#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caplab/extension.hpp"
#include "caplab/homspace.hpp"
#include "caplab/properties.hpp"

namespace caplab {

/// Point indices of the carrier (Y × A) ∪ A ∪ {x_inf} built from a witness.
/// Pairs come first in (a, y) order, then the index points, then x_inf.
struct WitnessCarrier {
	std::size_t y_size = 0;
	std::size_t a_size = 0;

	PointId pair(PointId y, std::size_t a) const { return a * y_size + y; }
	PointId index(std::size_t a) const { return a_size * y_size + a; }
	PointId infinity_point() const { return a_size * y_size + a_size; }
	std::size_t size() const { return a_size * y_size + a_size + 1; }
	PointSet pairs() const { return PointSet::all(a_size * y_size); }
	PointSet indices() const;
};

/// Relabels A to a0, a1, ... so the built point names cannot collide.
RegularityWitness normalize_witness(RegularityWitness w);

struct ConstructionReport {
	std::string kind;  // "thm1" or "extension"
	Tensor tensor = Tensor::Plus;
	RegularityWitness witness;
	WitnessCarrier layout;
	FiniteCapSpace x;
	SpaceMap f;                                // thm1: X -> Y; extension: S -> Y
	std::optional<SpaceMap> g;                 // extension: h(S, f, α) -> Y
	std::optional<FunctionSpace> functions;    // thm1: Y^X
	std::optional<PrincipalFilter> filter;     // thm1: F0 on Y^X; extension: H on X
	PointSet s;                                // extension: S = Y × A
	Weight alpha;                              // extension level
	Weight greater, smaller;                   // the strict inequality greater > smaller
	std::vector<std::pair<std::string, bool>> clauses;
	std::vector<std::string> transcript;

	bool passed() const;
};

/// Rebuilds the topological space and map witnessing that m_⊕(f) exceeds the
/// infimum of λ_[X,Y](F)(f). Throws std::invalid_argument when `w` is not a
/// violation and std::logic_error when a verification clause fails.
ConstructionReport build_thm1_converse(const FiniteCapSpace& y, const RegularityWitness& w, Tensor t);

/// Rebuilds the ⊕-approach space, strict subspace and admissible but
/// non-contractive extension. Same error behaviour.
ConstructionReport build_extension_converse(const FiniteCapSpace& y, const RegularityWitness& w,
                                            Tensor t);

/// is_regular -> extract_selection_witness -> both builders; nullopt if Y is ⊕-regular.
std::optional<std::pair<ConstructionReport, ConstructionReport>> find_and_refute(const FiniteCapSpace& y,
                                                                                 Tensor t);

} // namespace caplab
