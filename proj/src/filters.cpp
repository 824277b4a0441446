#include "caplab/filters.hpp"

#include <algorithm>
#include <stdexcept>

namespace caplab {

Carrier::Carrier(std::vector<std::string> names) : size_(names.size()), names_(std::move(names))
{
	auto sorted = names_;
	std::sort(sorted.begin(), sorted.end());
	if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
		throw std::invalid_argument("duplicate point name in carrier");
}

std::shared_ptr<const Carrier> Carrier::make(std::vector<std::string> names)
{
	return std::make_shared<const Carrier>(std::move(names));
}

std::shared_ptr<const Carrier> Carrier::indexed(std::string prefix, std::size_t size)
{
	auto c = std::shared_ptr<Carrier>(new Carrier());
	c->size_ = size;
	c->prefix_ = std::move(prefix);
	return c;
}

std::string Carrier::name(PointId p) const
{
	if (p >= size_)
		throw std::out_of_range("point index out of range");
	if (names_.empty())
		return prefix_ + std::to_string(p);
	return names_[p];
}

std::optional<PointId> Carrier::find(std::string_view name) const
{
	if (names_.empty()) {
		if (name.substr(0, prefix_.size()) != prefix_)
			return std::nullopt;
		auto rest = name.substr(prefix_.size());
		if (rest.empty() || rest.find_first_not_of("0123456789") != std::string_view::npos)
			return std::nullopt;
		auto idx = static_cast<PointId>(std::stoull(std::string(rest)));
		if (idx < size_)
			return idx;
		return std::nullopt;
	}
	auto it = std::find(names_.begin(), names_.end(), name);
	if (it == names_.end())
		return std::nullopt;
	return static_cast<PointId>(it - names_.begin());
}

bool operator==(const Carrier& a, const Carrier& b)
{
	return a.size_ == b.size_ && a.names_ == b.names_ && a.prefix_ == b.prefix_;
}

bool same_carrier(const CarrierRef& a, const CarrierRef& b)
{
	return a == b || (a && b && *a == *b);
}

PrincipalFilter::PrincipalFilter(CarrierRef carrier, Core core)
	: carrier_(std::move(carrier)), core_(std::move(core))
{
	if (!carrier_)
		throw std::invalid_argument("filter without carrier");
	if (core_.size() != carrier_->size())
		throw std::invalid_argument("filter core does not match its carrier");
	if (core_.none())
		throw std::invalid_argument("filter core must be nonempty");
}

PrincipalFilter::PrincipalFilter(CarrierRef carrier, std::span<const PointId> core)
	: PrincipalFilter(carrier, [&] {
		  Core bits(carrier ? carrier->size() : 0);
		  for (PointId p : core) {
			  if (p >= bits.size())
				  throw std::out_of_range("filter core point outside carrier");
			  bits.set(p);
		  }
		  return bits;
	  }())
{
}

PrincipalFilter PrincipalFilter::point(CarrierRef carrier, PointId p)
{
	PointId pts[] = {p};
	return PrincipalFilter(std::move(carrier), std::span<const PointId>(pts));
}

PrincipalFilter PrincipalFilter::whole(CarrierRef carrier)
{
	Core bits(carrier->size());
	bits.set();
	return PrincipalFilter(std::move(carrier), std::move(bits));
}

std::vector<PointId> PrincipalFilter::points() const
{
	std::vector<PointId> out;
	for (auto p = core_.find_first(); p != Core::npos; p = core_.find_next(p))
		out.push_back(p);
	return out;
}

std::string PrincipalFilter::to_string() const
{
	std::string s = "{";
	bool first = true;
	for (PointId p : points()) {
		if (!first)
			s += ",";
		s += carrier_->name(p);
		first = false;
	}
	return s + "}";
}

bool PrincipalFilter::coarser_than(const PrincipalFilter& finer) const
{
	if (!same_carrier(carrier_, finer.carrier_))
		throw std::invalid_argument("comparing filters on different carriers");
	return finer.core_.is_subset_of(core_);
}

bool operator==(const PrincipalFilter& a, const PrincipalFilter& b)
{
	return same_carrier(a.carrier_, b.carrier_) && a.core_ == b.core_;
}

PrincipalFilter meet(const PrincipalFilter& f, const PrincipalFilter& g)
{
	if (!same_carrier(f.carrier(), g.carrier()))
		throw std::invalid_argument("meet of filters on different carriers");
	return PrincipalFilter(f.carrier(), f.core() | g.core());
}

Selection::Selection(CarrierRef domain, std::vector<PrincipalFilter> filters)
	: domain_(std::move(domain)), filters_(std::move(filters))
{
	if (filters_.size() != domain_->size())
		throw std::invalid_argument("selection must be defined at every point");
	if (filters_.empty())
		throw std::invalid_argument("selection on an empty carrier");
	codomain_ = filters_.front().carrier();
	for (const auto& f : filters_)
		if (!same_carrier(f.carrier(), codomain_))
			throw std::invalid_argument("selection values live on different carriers");
}

PrincipalFilter image(const PointMap& f, const PrincipalFilter& filter)
{
	if (!same_carrier(f.domain, filter.carrier()))
		throw std::invalid_argument("image: filter is not on the map's domain");
	PrincipalFilter::Core out(f.codomain->size());
	for (PointId p : filter.points())
		out.set(f(p));
	return PrincipalFilter(f.codomain, std::move(out));
}

PrincipalFilter kowalsky(const Selection& s, const PrincipalFilter& filter)
{
	if (!same_carrier(s.domain(), filter.carrier()))
		throw std::invalid_argument("kowalsky: filter is not on the selection's domain");
	PrincipalFilter::Core out(s.codomain()->size());
	for (PointId p : filter.points())
		out |= s(p).core();
	return PrincipalFilter(s.codomain(), std::move(out));
}

PrincipalFilter evaluate(const PrincipalFilter& g, const PrincipalFilter& f,
                         const FunctionApply& apply, CarrierRef target)
{
	PrincipalFilter::Core out(target->size());
	auto xs = g.points();
	for (auto h = f.core().find_first(); h != PrincipalFilter::Core::npos; h = f.core().find_next(h))
		for (PointId x : xs)
			out.set(apply(h, x));
	return PrincipalFilter(std::move(target), std::move(out));
}

std::vector<PrincipalFilter> ultrafilters(const PrincipalFilter& filter)
{
	std::vector<PrincipalFilter> out;
	for (PointId p : filter.points())
		out.push_back(PrincipalFilter::point(filter.carrier(), p));
	return out;
}

} // namespace caplab
