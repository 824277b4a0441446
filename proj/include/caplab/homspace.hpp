#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caplab/filters.hpp"
#include "caplab/space.hpp"

namespace caplab {

/// Y^X, or a designated list of maps X -> Y, as an indexed point set.
///
/// The full set is indexed in mixed radix: element h sends point x to digit x
/// of h written in base |Y|.
class FunctionSpace {
public:
	static constexpr std::size_t kDefaultCap = 1'000'000;

	/// All maps X -> Y; throws std::length_error above `cap` elements.
	FunctionSpace(FiniteCapSpace source, FiniteCapSpace target, std::size_t cap = kDefaultCap);
	/// A designated list of maps (each a vector of target indices).
	FunctionSpace(FiniteCapSpace source, FiniteCapSpace target,
	              std::vector<std::vector<PointId>> elements, std::vector<std::string> names);

	const FiniteCapSpace& source() const { return source_; }
	const FiniteCapSpace& target() const { return target_; }
	const CarrierRef& carrier() const { return carrier_; }
	std::size_t size() const { return carrier_->size(); }
	bool is_full() const { return explicit_.empty(); }

	PointId apply(std::size_t h, PointId x) const;
	std::vector<PointId> values(std::size_t h) const;
	/// Index of a map given by its values; nullopt if it is not an element.
	std::optional<std::size_t> index_of(const std::vector<PointId>& values) const;
	std::string describe(std::size_t h) const;

	FunctionApply applier() const;

private:
	FiniteCapSpace source_;
	FiniteCapSpace target_;
	CarrierRef carrier_;
	std::vector<std::vector<PointId>> explicit_;
};

/// λ_[X,Y](F)(f), F a filter on the function set, f an arbitrary map X -> Y
/// given by its values. Closed form
///   max_{x, b ∈ X} residuate_max( max_{h ∈ core F} d_Y(f(x), h(b)), d_X(x, b) ).
Weight hom_limit(const FunctionSpace& fs, const PrincipalFilter& filter, const std::vector<PointId>& f);

/// min over all filters on Y^X of λ_[X,Y](F)(f). The minimum is attained at a
/// single-function filter {h}↑, and λ_[X,Y]({h}↑)(f) is a max over b of a term
/// depending only on h(b), so each h(b) is chosen independently; Y^X is never
/// materialized.
Weight hom_min(const FiniteCapSpace& x, const FiniteCapSpace& y, const std::vector<PointId>& f);

/// m_⊕(f): least α with λ_Y(f[B])(f(x)) <= λ_X(B)(x) ⊕ α for every B, x.
/// Max reduces to singleton B; Plus enumerates all subsets of the source.
Weight contraction_default(const SpaceMap& f, Tensor t);

bool is_contraction(const SpaceMap& f);

struct ContinuousLimitsReport {
	Weight default_of_contraction;  // m_⊕(f)
	Weight hom_infimum;             // c
	Weight bound;                   // c ⊕ c
	bool holds = false;
};

/// Checks m_⊕(f) <= c ⊕ c with c = hom_min. Throws std::invalid_argument
/// unless the target is ⊕-regular.
ContinuousLimitsReport verify_thm_continuouslimits(const SpaceMap& f, Tensor t);

struct LemmaRegReport {
	bool vacuous = false;  // precondition fails
	bool holds = true;
	std::optional<PointSet> failing_g;  // G with f(G) ⊄ ⟨G, F⟩^(α)
};

/// If λ_Y(⟨{x}↑, F⟩)(f(x)) <= α for every x, checks f(G) ⊆ ⟨G, F⟩^(α) for every
/// nonempty G ⊆ X.
LemmaRegReport verify_lemma_reg(const FunctionSpace& fs, const PrincipalFilter& filter,
                                const std::vector<PointId>& f, const Weight& alpha);

} // namespace caplab
