#include "caplab/weight.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace caplab {

namespace {

constexpr std::int64_t kSafeMagnitude = std::int64_t{1} << 31;

void require_safe(const Rational& r)
{
	if (r.numerator() >= kSafeMagnitude || r.denominator() >= kSafeMagnitude)
		throw std::overflow_error("weight exceeds the exact arithmetic range: " +
		                          std::to_string(r.numerator()) + "/" +
		                          std::to_string(r.denominator()));
}

std::int64_t parse_digits(std::string_view digits, std::string_view whole)
{
	if (digits.empty())
		throw std::invalid_argument("malformed weight '" + std::string(whole) + "'");
	for (char c : digits)
		if (c < '0' || c > '9')
			throw std::invalid_argument("malformed weight '" + std::string(whole) + "'");
	std::int64_t v = 0;
	auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
	if (ec != std::errc() || v >= kSafeMagnitude)
		throw std::invalid_argument("weight literal out of range '" + std::string(whole) + "'");
	return v;
}

} // namespace

Weight::Weight(std::int64_t v) : Weight(Rational(v)) {}

Weight::Weight(Rational v) : value_(v)
{
	if (v.numerator() < 0)
		throw std::invalid_argument("weights are nonnegative");
	require_safe(v);
}

Weight Weight::infinity()
{
	Weight w;
	w.infinite_ = true;
	return w;
}

const Rational& Weight::value() const
{
	if (infinite_)
		throw std::logic_error("value() of an infinite weight");
	return value_;
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b)
{
	if (a.infinite_ || b.infinite_)
		return a.infinite_ <=> b.infinite_;
	if (a.value_ == b.value_)
		return std::strong_ordering::equal;
	return a.value_ < b.value_ ? std::strong_ordering::less : std::strong_ordering::greater;
}

Weight operator+(const Weight& a, const Weight& b)
{
	if (a.infinite_ || b.infinite_)
		return Weight::infinity();
	return Weight(a.value_ + b.value_);
}

Weight Weight::parse(std::string_view text)
{
	if (text == "inf")
		return infinity();
	if (auto slash = text.find('/'); slash != std::string_view::npos) {
		auto num = parse_digits(text.substr(0, slash), text);
		auto den = parse_digits(text.substr(slash + 1), text);
		if (den == 0)
			throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
		return Weight(Rational(num, den));
	}
	if (auto dot = text.find('.'); dot != std::string_view::npos) {
		auto int_part = parse_digits(text.substr(0, dot), text);
		auto frac = text.substr(dot + 1);
		auto frac_part = parse_digits(frac, text);
		std::int64_t scale = 1;
		for (std::size_t i = 0; i < frac.size(); ++i) {
			scale *= 10;
			if (scale >= kSafeMagnitude)
				throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
		}
		return Weight(Rational(int_part) + Rational(frac_part, scale));
	}
	return Weight(Rational(parse_digits(text, text)));
}

std::string Weight::to_string() const
{
	if (infinite_)
		return "inf";
	if (value_.denominator() == 1)
		return std::to_string(value_.numerator());
	return std::to_string(value_.numerator()) + "/" + std::to_string(value_.denominator());
}

std::ostream& operator<<(std::ostream& os, const Weight& w)
{
	return os << w.to_string();
}

std::string_view to_string(Tensor t)
{
	return t == Tensor::Plus ? "plus" : "max";
}

Tensor parse_tensor(std::string_view text)
{
	if (text == "plus" || text == "+")
		return Tensor::Plus;
	if (text == "max" || text == "v")
		return Tensor::Max;
	throw std::invalid_argument("unknown tensor '" + std::string(text) + "' (expected plus|max)");
}

Weight combine(const Weight& a, const Weight& b, Tensor t)
{
	if (t == Tensor::Max)
		return max(a, b);
	return a + b;
}

Weight residuate(const Weight& v, const Weight& u, Tensor t)
{
	if (v <= u)
		return Weight();
	if (t == Tensor::Max || v.is_infinite())
		return v;
	return Weight(v.value() - u.value());
}

} // namespace caplab
