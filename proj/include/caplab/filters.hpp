#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace caplab {

using PointId = std::size_t;

/// A finite, ordered point set. Either explicitly named, or `size` anonymous
/// points named `<prefix><index>` (used for large function sets).
class Carrier {
public:
	explicit Carrier(std::vector<std::string> names);
	static std::shared_ptr<const Carrier> make(std::vector<std::string> names);
	static std::shared_ptr<const Carrier> indexed(std::string prefix, std::size_t size);

	std::size_t size() const { return size_; }
	std::string name(PointId p) const;
	std::optional<PointId> find(std::string_view name) const;

	/// Structural identity: same names in the same order.
	friend bool operator==(const Carrier& a, const Carrier& b);

private:
	Carrier() = default;

	std::size_t size_ = 0;
	std::vector<std::string> names_;
	std::string prefix_;
};

using CarrierRef = std::shared_ptr<const Carrier>;

bool same_carrier(const CarrierRef& a, const CarrierRef& b);

/// The principal filter {core}↑ on a finite carrier. On a finite set every
/// filter is of this form, so the core identifies the filter.
class PrincipalFilter {
public:
	using Core = boost::dynamic_bitset<>;

	/// Throws std::invalid_argument when the core is empty or sized wrongly.
	PrincipalFilter(CarrierRef carrier, Core core);
	PrincipalFilter(CarrierRef carrier, std::span<const PointId> core);

	static PrincipalFilter point(CarrierRef carrier, PointId p);
	static PrincipalFilter whole(CarrierRef carrier);

	const CarrierRef& carrier() const { return carrier_; }
	const Core& core() const { return core_; }
	bool contains(PointId p) const { return core_.test(p); }
	std::vector<PointId> points() const;
	std::string to_string() const;

	/// F <= G (F coarser) iff core(G) ⊆ core(F).
	bool coarser_than(const PrincipalFilter& finer) const;

	friend bool operator==(const PrincipalFilter& a, const PrincipalFilter& b);

private:
	CarrierRef carrier_;
	Core core_;
};

/// F ∧ G: core(F) ∪ core(G).
PrincipalFilter meet(const PrincipalFilter& f, const PrincipalFilter& g);

/// A total map between two carriers.
struct PointMap {
	CarrierRef domain;
	CarrierRef codomain;
	std::vector<PointId> values;

	PointId operator()(PointId p) const { return values[p]; }
};

/// A point-indexed family of filters 𝒮 : domain -> 𝔽(codomain).
class Selection {
public:
	Selection(CarrierRef domain, std::vector<PrincipalFilter> filters);

	const CarrierRef& domain() const { return domain_; }
	const CarrierRef& codomain() const { return codomain_; }
	const PrincipalFilter& operator()(PointId p) const { return filters_[p]; }

private:
	CarrierRef domain_;
	CarrierRef codomain_;
	std::vector<PrincipalFilter> filters_;
};

/// f[F]: core f(core F).
PrincipalFilter image(const PointMap& f, const PrincipalFilter& filter);

/// 𝒮(F) = ⋃_{F∈𝓕} ⋂_{x∈F} 𝒮(x); on cores, the union of the selected cores.
PrincipalFilter kowalsky(const Selection& s, const PrincipalFilter& filter);

/// Values h(x) for h in a function carrier; `apply(h, x)` must be total.
using FunctionApply = std::function<PointId(std::size_t function, PointId x)>;

/// ⟨G, F⟩ on `target`: core {h(x) : h ∈ core F, x ∈ core G}.
PrincipalFilter evaluate(const PrincipalFilter& g, const PrincipalFilter& f,
                         const FunctionApply& apply, CarrierRef target);

/// Ultrafilters finer than F: the point filters of its core.
std::vector<PrincipalFilter> ultrafilters(const PrincipalFilter& filter);

} // namespace caplab
