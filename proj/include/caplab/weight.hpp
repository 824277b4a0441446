#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace caplab {

using Rational = boost::rational<std::int64_t>;

/// A value of [0, inf] with exact rational arithmetic.
///
/// Finite values are nonnegative rationals. Numerators and denominators are
/// kept below 2^31 in magnitude before any addition or subtraction so that the
/// 64-bit intermediate products cannot overflow; exceeding that range throws
/// std::overflow_error instead of silently rounding.
class Weight {
public:
	constexpr Weight() = default;
	Weight(std::int64_t v);
	Weight(Rational v);

	static Weight infinity();
	static Weight zero() { return Weight(); }

	bool is_infinite() const { return infinite_; }
	bool is_finite() const { return !infinite_; }
	bool is_zero() const { return !infinite_ && value_.numerator() == 0; }

	/// Finite value; throws std::logic_error on infinity.
	const Rational& value() const;

	/// Accepts `inf`, integer `5`, decimal `1.25` and rational `3/2`.
	static Weight parse(std::string_view text);
	/// Canonical text: `inf`, `5` or `3/2`. parse(to_string()) is the identity.
	std::string to_string() const;

	friend bool operator==(const Weight& a, const Weight& b)
	{
		return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
	}
	friend std::strong_ordering operator<=>(const Weight& a, const Weight& b);

	friend Weight operator+(const Weight& a, const Weight& b);

private:
	bool infinite_ = false;
	Rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

inline const Weight& max(const Weight& a, const Weight& b) { return a < b ? b : a; }
inline const Weight& min(const Weight& a, const Weight& b) { return b < a ? b : a; }

/// The quantale operation on [0, inf]: ordinary addition or pairwise maximum.
enum class Tensor { Plus, Max };

std::string_view to_string(Tensor t);
/// Accepts `plus`/`+` and `max`/`v`; throws std::invalid_argument otherwise.
Tensor parse_tensor(std::string_view text);

/// a ⊕ b. Plus uses a + inf = inf.
Weight combine(const Weight& a, const Weight& b, Tensor t);

/// Least alpha with v <= u ⊕ alpha.
///
///   Plus:  v <= u          -> 0
///          u < v < inf     -> v - u
///          v = inf > u     -> inf
///          u = inf         -> 0      (covered by the first row)
///   Max:   v <= u          -> 0
///          otherwise       -> v
Weight residuate(const Weight& v, const Weight& u, Tensor t);

} // namespace caplab
