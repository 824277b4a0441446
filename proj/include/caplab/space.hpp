#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caplab/filters.hpp"
#include "caplab/weight.hpp"

namespace caplab {

/// Subset of a space carrier (at most 64 points), as a bitmask.
class PointSet {
public:
	constexpr PointSet() = default;
	constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}

	static constexpr PointSet single(PointId p) { return PointSet(std::uint64_t{1} << p); }
	static constexpr PointSet all(std::size_t n)
	{
		return PointSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
	}

	constexpr std::uint64_t bits() const { return bits_; }
	constexpr bool empty() const { return bits_ == 0; }
	constexpr bool contains(PointId p) const { return (bits_ >> p) & 1U; }
	constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
	constexpr bool subset_of(PointSet o) const { return (bits_ & ~o.bits_) == 0; }
	constexpr PointId first() const { return static_cast<PointId>(std::countr_zero(bits_)); }

	constexpr PointSet& insert(PointId p)
	{
		bits_ |= std::uint64_t{1} << p;
		return *this;
	}

	friend constexpr PointSet operator|(PointSet a, PointSet b) { return PointSet(a.bits_ | b.bits_); }
	friend constexpr PointSet operator&(PointSet a, PointSet b) { return PointSet(a.bits_ & b.bits_); }
	friend constexpr PointSet operator-(PointSet a, PointSet b) { return PointSet(a.bits_ & ~b.bits_); }
	friend constexpr bool operator==(PointSet, PointSet) = default;
	friend constexpr auto operator<=>(PointSet, PointSet) = default;

	class iterator {
	public:
		using value_type = PointId;
		using difference_type = std::ptrdiff_t;
		constexpr iterator() = default;
		constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
		constexpr PointId operator*() const { return static_cast<PointId>(std::countr_zero(rest_)); }
		constexpr iterator& operator++()
		{
			rest_ &= rest_ - 1;
			return *this;
		}
		constexpr iterator operator++(int)
		{
			auto old = *this;
			++*this;
			return old;
		}
		friend constexpr bool operator==(iterator, iterator) = default;

	private:
		std::uint64_t rest_ = 0;
	};

	constexpr iterator begin() const { return iterator(bits_); }
	constexpr iterator end() const { return iterator(); }

private:
	std::uint64_t bits_ = 0;
};

/// Calls fn(PointSet) for every nonempty subset of `of`, in increasing bit order.
template <class Fn>
void for_each_nonempty_subset(PointSet of, Fn&& fn)
{
	const std::uint64_t mask = of.bits();
	for (std::uint64_t s = mask & (0 - mask); s != 0; s = (s - mask) & mask)
		fn(PointSet(s));
}

/// Finite preconvergence-approach space given by d(x, a) = λ({a}↑)(x).
/// λ of any filter is the envelope λ({A}↑)(x) = max_{a ∈ A} d(x, a).
class FiniteCapSpace {
public:
	static constexpr std::size_t kMaxPoints = 64;

	/// `matrix` is row-major, matrix[x * n + a] = d(x, a). The shape is checked
	/// here; centeredness is only reported by validate().
	FiniteCapSpace(std::string name, std::vector<std::string> points, std::vector<Weight> matrix,
	               bool centered = true);
	/// Off-diagonal entries ∞, diagonal 0.
	static FiniteCapSpace discrete(std::string name, std::vector<std::string> points);

	const std::string& name() const { return name_; }
	const CarrierRef& carrier() const { return carrier_; }
	std::size_t size() const { return carrier_->size(); }
	bool centered() const { return centered_; }
	PointSet points() const { return PointSet::all(size()); }
	std::string point_name(PointId p) const { return carrier_->name(p); }
	PointId point(std::string_view name) const;

	const Weight& d(PointId x, PointId a) const { return matrix_[x * size() + a]; }
	void set(PointId x, PointId a, Weight w) { matrix_[x * size() + a] = std::move(w); }

	/// λ({A}↑)(x); 0 for the empty set.
	Weight limit(PointSet a, PointId x) const;
	Weight limit(const PrincipalFilter& f, PointId x) const;

	/// A^(ε) = {x : ∃ a ∈ A, d(x, a) <= ε}.
	PointSet enlarge(PointSet a, const Weight& eps) const;
	PrincipalFilter enlarge(const PrincipalFilter& f, const Weight& eps) const;

	/// Sorted distinct matrix entries together with 0 and ∞.
	std::vector<Weight> grid() const;

	bool is_conv_embedded() const;

	FiniteCapSpace subspace(PointSet s) const;
	FiniteCapSpace subspace(PointSet s, std::string name) const;
	/// Conv-coreflection: 0 where d = 0, ∞ elsewhere.
	FiniteCapSpace coreflection() const;
	/// Conv-reflection: 0 where d < ∞, ∞ elsewhere.
	FiniteCapSpace reflection() const;

	PointSet to_set(const PrincipalFilter& f) const;
	PrincipalFilter to_filter(PointSet s) const;
	std::string format_set(PointSet s) const;

	friend bool operator==(const FiniteCapSpace& a, const FiniteCapSpace& b);

private:
	std::string name_;
	CarrierRef carrier_;
	std::vector<Weight> matrix_;
	bool centered_;
};

struct Violation {
	PointId x;
	PointId a;
	std::string message;
};

struct ValidationReport {
	bool valid = true;
	std::vector<std::string> points;
	std::vector<Weight> grid;
	std::vector<Violation> violations;
};

ValidationReport validate(const FiniteCapSpace& space);

/// Matrix-backed spaces satisfy λ(⋀ 𝔻) = ⋁ λ(𝔻) for every family 𝔻 because
/// meets of principal filters on a finite set are principal on the union of
/// the cores. The answer is therefore always true.
constexpr bool is_pre_approach(const FiniteCapSpace&) { return true; }

/// A total map from `source` to `target`. The source may be the subspace of
/// a larger space; `embedding[p]` then names p's index in that ambient space.
struct SpaceMap {
	std::string name;
	FiniteCapSpace source;
	FiniteCapSpace target;
	std::vector<PointId> assignment;
	std::optional<std::string> ambient_name;
	std::vector<PointId> embedding;

	SpaceMap(std::string name, FiniteCapSpace source, FiniteCapSpace target,
	         std::vector<PointId> assignment);

	PointId operator()(PointId x) const { return assignment[x]; }
	PointSet image(PointSet b) const;
	PointMap point_map() const;
};

SpaceMap identity_map(const FiniteCapSpace& from, const FiniteCapSpace& to);

} // namespace caplab
