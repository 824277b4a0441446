#include "caplab/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace caplab {

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
	: std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
	  source_(std::move(source)), line_(line)
{
}

namespace {

constexpr PointId kNone = static_cast<PointId>(-1);

struct Line {
	std::size_t number;
	std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text)
{
	std::vector<Line> out;
	std::size_t number = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		auto end = text.find('\n', pos);
		if (end == std::string_view::npos)
			end = text.size();
		auto line = text.substr(pos, end - pos);
		++number;
		if (auto hash = line.find('#'); hash != std::string_view::npos)
			line = line.substr(0, hash);
		std::istringstream in{std::string(line)};
		Line l{number, {}};
		for (std::string tok; in >> tok;)
			l.tokens.push_back(tok);
		if (!l.tokens.empty())
			out.push_back(std::move(l));
		pos = end + 1;
	}
	return out;
}

} // namespace

FiniteCapSpace parse_space(std::string_view text, const std::string& source)
{
	std::optional<std::string> name;
	std::optional<bool> centered;
	std::optional<std::vector<std::string>> points;
	std::map<std::pair<std::size_t, std::size_t>, std::pair<Weight, std::size_t>> entries;
	std::map<std::string, std::size_t> index;

	for (const auto& [ln, tok] : tokenize(text)) {
		auto fail = [&, ln = ln](const std::string& msg) { throw ParseError(source, ln, msg); };
		const auto& kw = tok[0];
		if (kw == "space") {
			if (tok.size() != 2)
				fail("expected 'space <name>'");
			if (name)
				fail("duplicate 'space' line");
			name = tok[1];
		} else if (kw == "centered") {
			if (tok.size() != 2 || (tok[1] != "true" && tok[1] != "false"))
				fail("expected 'centered true|false'");
			if (centered)
				fail("duplicate 'centered' line");
			centered = tok[1] == "true";
		} else if (kw == "points") {
			if (points)
				fail("duplicate 'points' line");
			if (tok.size() < 2)
				fail("'points' needs at least one point");
			points.emplace(tok.begin() + 1, tok.end());
			for (std::size_t i = 0; i < points->size(); ++i)
				if (!index.emplace((*points)[i], i).second)
					fail("duplicate point '" + (*points)[i] + "'");
		} else if (kw == "lambda") {
			if (!points)
				fail("'lambda' before 'points'");
			if (tok.size() != 4)
				fail("expected 'lambda <x> <a> <weight>'");
			auto xi = index.find(tok[1]);
			auto ai = index.find(tok[2]);
			if (xi == index.end())
				fail("unknown point '" + tok[1] + "'");
			if (ai == index.end())
				fail("unknown point '" + tok[2] + "'");
			Weight w;
			try {
				w = Weight::parse(tok[3]);
			} catch (const std::exception& e) {
				fail(e.what());
			}
			if (!entries.emplace(std::pair{xi->second, ai->second}, std::pair{w, ln}).second)
				fail("duplicate entry lambda " + tok[1] + " " + tok[2]);
		} else {
			fail("unknown directive '" + kw + "'");
		}
	}
	if (!name)
		throw ParseError(source, 0, "missing 'space' line");
	if (!points)
		throw ParseError(source, 0, "missing 'points' line");

	const bool is_centered = centered.value_or(true);
	const auto n = points->size();
	std::vector<Weight> m(n * n, Weight::infinity());
	for (std::size_t i = 0; i < n; ++i)
		m[i * n + i] = Weight();
	for (const auto& [key, value] : entries) {
		const auto& [x, a] = key;
		if (is_centered && x == a && !value.first.is_zero())
			throw ParseError(source, value.second,
			                 "centered space requires lambda " + (*points)[x] + " " + (*points)[x] + " = 0");
		m[x * n + a] = value.first;
	}
	try {
		return FiniteCapSpace(*name, *points, std::move(m), is_centered);
	} catch (const std::invalid_argument& e) {
		throw ParseError(source, 0, e.what());
	}
}

std::string read_file(const std::filesystem::path& file)
{
	std::ifstream in(file);
	if (!in)
		throw ParseError(file.string(), 0, "cannot open file");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

FiniteCapSpace read_space(const std::filesystem::path& file)
{
	return parse_space(read_file(file), file.string());
}

std::string serialize_space(const FiniteCapSpace& space)
{
	std::ostringstream out;
	out << "space " << space.name() << "\n";
	out << "centered " << (space.centered() ? "true" : "false") << "\n";
	out << "points";
	for (PointId p = 0; p < space.size(); ++p)
		out << " " << space.point_name(p);
	out << "\n";
	for (PointId x = 0; x < space.size(); ++x)
		for (PointId a = 0; a < space.size(); ++a) {
			const Weight& w = space.d(x, a);
			bool is_default = x == a ? w.is_zero() : w.is_infinite();
			if (!is_default)
				out << "lambda " << space.point_name(x) << " " << space.point_name(a) << " " << w << "\n";
		}
	return out.str();
}

SpaceMap parse_map(std::string_view text, const SpaceResolver& resolve, const std::string& source)
{
	std::optional<std::string> name;
	std::optional<FiniteCapSpace> from, to;
	std::optional<PointSet> restrict_to;
	std::vector<std::pair<Line, bool>> pairs;
	auto lines = tokenize(text);

	for (const auto& line : lines) {
		const auto& [ln, tok] = line;
		auto fail = [&, ln = ln](const std::string& msg) { throw ParseError(source, ln, msg); };
		auto load = [&](const std::string& space_name) {
			try {
				return resolve(space_name);
			} catch (const ParseError&) {
				throw;
			} catch (const std::exception& e) {
				fail("cannot resolve space '" + space_name + "': " + e.what());
			}
			throw std::logic_error("unreachable");
		};
		const auto& kw = tok[0];
		if (kw == "map") {
			if (tok.size() != 2 || name)
				fail("expected a single 'map <name>' line");
			name = tok[1];
		} else if (kw == "from") {
			if (from)
				fail("duplicate 'from' line");
			if (tok.size() < 2 || (tok.size() > 2 && tok[2] != "restrict") || tok.size() == 3)
				fail("expected 'from <space> [restrict <p1> ...]'");
			from = load(tok[1]);
			if (tok.size() > 3) {
				PointSet s;
				for (std::size_t i = 3; i < tok.size(); ++i) {
					auto p = from->carrier()->find(tok[i]);
					if (!p)
						fail("unknown point '" + tok[i] + "' in space '" + from->name() + "'");
					if (s.contains(*p))
						fail("point '" + tok[i] + "' restricted twice");
					s.insert(*p);
				}
				restrict_to = s;
			}
		} else if (kw == "to") {
			if (to)
				fail("duplicate 'to' line");
			if (tok.size() != 2)
				fail("expected 'to <space>'");
			to = load(tok[1]);
		} else if (kw == "pair") {
			if (tok.size() != 3)
				fail("expected 'pair <x> <y>'");
			pairs.emplace_back(line, false);
		} else {
			fail("unknown directive '" + kw + "'");
		}
	}
	if (!name)
		throw ParseError(source, 0, "missing 'map' line");
	if (!from || !to)
		throw ParseError(source, 0, "missing 'from' or 'to' line");

	FiniteCapSpace src = restrict_to ? from->subspace(*restrict_to, from->name() + "|S") : *from;
	std::vector<PointId> assignment(src.size(), kNone);
	for (const auto& [line, unused] : pairs) {
		const auto& [ln, tok] = line;
		auto x = src.carrier()->find(tok[1]);
		auto y = to->carrier()->find(tok[2]);
		if (!x)
			throw ParseError(source, ln, "'" + tok[1] + "' is not a source point");
		if (!y)
			throw ParseError(source, ln, "'" + tok[2] + "' is not a point of '" + to->name() + "'");
		if (assignment[*x] != kNone)
			throw ParseError(source, ln, "point '" + tok[1] + "' mapped twice");
		assignment[*x] = *y;
	}
	for (PointId x = 0; x < src.size(); ++x)
		if (assignment[x] == kNone)
			throw ParseError(source, 0, "map is not total: no pair for '" + src.point_name(x) + "'");

	SpaceMap m(*name, src, *to, std::move(assignment));
	if (restrict_to) {
		m.ambient_name = from->name();
		m.embedding.assign(restrict_to->begin(), restrict_to->end());
	}
	return m;
}

SpaceMap read_map(const std::filesystem::path& file, const std::vector<FiniteCapSpace>& extra)
{
	auto dir = file.parent_path();
	SpaceResolver resolve = [&](const std::string& name) -> FiniteCapSpace {
		for (const auto& s : extra)
			if (s.name() == name)
				return s;
		for (auto candidate : {dir / (name + ".cap"), dir / name})
			if (std::filesystem::is_regular_file(candidate))
				return read_space(candidate);
		throw std::invalid_argument("no space named '" + name + "' was given and no file " +
		                            (dir / (name + ".cap")).string() + " exists");
	};
	return parse_map(read_file(file), resolve, file.string());
}

std::string serialize_map(const SpaceMap& map)
{
	std::ostringstream out;
	out << "map " << map.name << "\n";
	if (map.ambient_name) {
		out << "from " << *map.ambient_name << " restrict";
		for (PointId p = 0; p < map.source.size(); ++p)
			out << " " << map.source.point_name(p);
		out << "\n";
	} else {
		out << "from " << map.source.name() << "\n";
	}
	out << "to " << map.target.name() << "\n";
	for (PointId p = 0; p < map.source.size(); ++p)
		out << "pair " << map.source.point_name(p) << " " << map.target.point_name(map(p)) << "\n";
	return out.str();
}

std::vector<std::size_t> parse_functions(std::string_view text, const FunctionSpace& fs,
                                         const std::string& source)
{
	const auto& x = fs.source();
	const auto& y = fs.target();
	std::vector<std::size_t> out;
	for (const auto& [ln, tok] : tokenize(text)) {
		auto fail = [&, ln = ln](const std::string& msg) { throw ParseError(source, ln, msg); };
		if (tok[0].empty() || tok[0].back() != ':')
			fail("expected 'h: x1->y1 x2->y2 ...'");
		std::vector<PointId> values(x.size(), kNone);
		for (std::size_t i = 1; i < tok.size(); ++i) {
			auto arrow = tok[i].find("->");
			if (arrow == std::string::npos)
				fail("expected 'x->y', found '" + tok[i] + "'");
			auto px = x.carrier()->find(tok[i].substr(0, arrow));
			auto py = y.carrier()->find(tok[i].substr(arrow + 2));
			if (!px)
				fail("unknown source point in '" + tok[i] + "'");
			if (!py)
				fail("unknown target point in '" + tok[i] + "'");
			if (values[*px] != kNone)
				fail("point '" + x.point_name(*px) + "' assigned twice");
			values[*px] = *py;
		}
		for (PointId p = 0; p < values.size(); ++p)
			if (values[p] == kNone)
				fail("function is not total: no value at '" + x.point_name(p) + "'");
		auto idx = fs.index_of(values);
		if (!idx)
			fail("function is not an element of the function set");
		out.push_back(*idx);
	}
	if (out.empty())
		throw ParseError(source, 0, "no functions listed");
	return out;
}

std::vector<std::size_t> read_functions(const std::filesystem::path& file, const FunctionSpace& fs)
{
	return parse_functions(read_file(file), fs, file.string());
}

std::string serialize_functions(const FunctionSpace& fs, const PrincipalFilter& filter)
{
	std::ostringstream out;
	for (auto h : filter.points())
		out << fs.describe(h) << "\n";
	return out.str();
}

PointSet parse_subset(std::string_view text, const FiniteCapSpace& space)
{
	const std::string original(text);
	while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
		text.remove_prefix(1);
	while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
		text.remove_suffix(1);
	if (!text.empty() && text.front() == '{') {
		if (text.back() != '}')
			throw std::invalid_argument("unbalanced braces in '" + original + "'");
		text = text.substr(1, text.size() - 2);
	}
	// Split at top-level commas; point names such as (y,a0) contain commas.
	PointSet s;
	auto take = [&](std::string_view tok) {
		while (!tok.empty() && tok.front() == ' ')
			tok.remove_prefix(1);
		while (!tok.empty() && tok.back() == ' ')
			tok.remove_suffix(1);
		if (!tok.empty())
			s.insert(space.point(tok));
	};
	int depth = 0;
	std::size_t start = 0;
	for (std::size_t i = 0; i < text.size(); ++i) {
		if (text[i] == '(')
			++depth;
		else if (text[i] == ')')
			--depth;
		else if (text[i] == ',' && depth == 0) {
			take(text.substr(start, i - start));
			start = i + 1;
		}
	}
	take(text.substr(start));
	if (s.empty())
		throw std::invalid_argument("empty subset '" + original + "'");
	return s;
}

} // namespace caplab
