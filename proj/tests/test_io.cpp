#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "caplab/constructions.hpp"
#include "caplab/corpus.hpp"
#include "caplab/io.hpp"

using namespace caplab;

namespace {

const Weight inf = Weight::infinity();

bool same_space(const FiniteCapSpace& a, const FiniteCapSpace& b)
{
	return a == b;
}

/// Line number of the ParseError thrown by `fn`, or -1.
template <typename Fn>
long error_line(Fn&& fn)
{
	try {
		fn();
	} catch (const ParseError& e) {
		return static_cast<long>(e.line());
	}
	return -1;
}

long space_error(const std::string& text)
{
	return error_line([&] { parse_space(text, "t.cap"); });
}

SpaceResolver resolver(std::vector<FiniteCapSpace> spaces)
{
	return [spaces](const std::string& name) -> FiniteCapSpace {
		for (const auto& s : spaces)
			if (s.name() == name)
				return s;
		throw std::invalid_argument("unknown space");
	};
}

struct TempDir {
	std::filesystem::path path;
	TempDir() : path(std::filesystem::temp_directory_path() / ("caplab_io_" + std::to_string(::getpid())))
	{
		std::filesystem::create_directories(path);
	}
	~TempDir() { std::filesystem::remove_all(path); }
	void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

} // namespace

TEST_CASE("space round trip")
{
	for (const auto& e : standard_corpus(5, 10)) {
		auto text = serialize_space(e.space);
		CHECK(same_space(parse_space(text), e.space));
	}
	auto y3 = space_y3();
	CHECK(serialize_space(y3) ==
	      "space Y3\ncentered true\npoints a b y\nlambda b a 1\nlambda y a 1\nlambda y b 5\n");
	auto r = build_thm1_converse(y3, extract_selection_witness(y3, Tensor::Plus, *is_regular(y3, Tensor::Plus)),
	                             Tensor::Plus);
	CHECK(same_space(parse_space(serialize_space(r.x)), r.x));
}

TEST_CASE("space defaults and syntax")
{
	auto s = parse_space(R"(
# a comment line
space S   # trailing comment
points u v w
lambda u v 1/2
lambda v u 0.25
lambda w u inf
)");
	CHECK(s.name() == "S");
	CHECK(s.centered());
	CHECK(s.d(0, 0) == Weight(0));
	CHECK(s.d(0, 1) == Weight(Rational(1, 2)));
	CHECK(s.d(1, 0) == Weight(Rational(1, 4)));
	CHECK(s.d(0, 2) == inf);
	CHECK(s.d(2, 0) == inf);

	auto loose = parse_space("space L\ncentered false\npoints u v\nlambda u u 1\n");
	CHECK_FALSE(loose.centered());
	CHECK(loose.d(0, 0) == Weight(1));
	CHECK(validate(loose).valid);  // only centered spaces constrain the diagonal
}

TEST_CASE("space errors carry line numbers")
{
	CHECK(space_error("space S\npoints a b\nlambda a c 1\n") == 3);
	CHECK(space_error("space S\npoints a b\nlambda a b -1\n") == 3);
	CHECK(space_error("space S\npoints a b\nlambda a b x\n") == 3);
	CHECK(space_error("space S\npoints a a\n") == 2);
	CHECK(space_error("space S\nlambda a b 1\npoints a b\n") == 2);
	CHECK(space_error("space S\npoints a b\nlambda a b 1\nlambda a b 2\n") == 4);
	CHECK(space_error("space S\npoints a b\n\nlambda a a 1\n") == 4);
	CHECK(space_error("space S\npoints a b\nmetric yes\n") == 3);
	CHECK(space_error("space S\ncentered maybe\npoints a\n") == 2);
	CHECK(space_error("space S T\npoints a\n") == 1);
	CHECK(space_error("space S\nspace T\npoints a\n") == 2);
	CHECK(space_error("points a b\n") == 0);
	CHECK(space_error("space S\n") == 0);
	CHECK(space_error("space S\npoints\n") == 2);
	try {
		parse_space("space S\npoints a\nlambda a a 1\n", "bad.cap");
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(std::string(e.what()) == "bad.cap:3: centered space requires lambda a a = 0");
		CHECK(e.source() == "bad.cap");
	}
	CHECK_THROWS_AS(read_space("/nonexistent/space.cap"), ParseError);
}

TEST_CASE("maps")
{
	auto x4 = space_x4();
	auto m3 = space_m3();
	auto resolve = resolver({x4, m3});
	auto f = parse_map("map f\nfrom X4\nto M3\npair s1 p\npair s2 q\npair t p\n", resolve);
	CHECK(f.name == "f");
	CHECK(f.assignment == std::vector<PointId>{0, 1, 0});
	CHECK_FALSE(f.ambient_name);
	CHECK(parse_map(serialize_map(f), resolve).assignment == f.assignment);

	auto r = parse_map("map g\nfrom X4 restrict s2 s1\nto M3\npair s1 p\npair s2 q\n", resolve);
	CHECK(r.source.name() == "X4|S");
	CHECK(r.source.size() == 2);
	CHECK(r.ambient_name == std::optional<std::string>("X4"));
	CHECK(r.embedding == std::vector<PointId>{0, 1});
	CHECK(serialize_map(r) == "map g\nfrom X4 restrict s1 s2\nto M3\npair s1 p\npair s2 q\n");
	auto back = parse_map(serialize_map(r), resolve);
	CHECK(back.embedding == r.embedding);
	CHECK(back.assignment == r.assignment);

	auto line = [&](const std::string& text) { return error_line([&] { parse_map(text, resolve); }); };
	CHECK(line("map f\nfrom X4\nto M3\npair s1 p\npair s2 q\n") == 0);          // not total
	CHECK(line("map f\nfrom X4\nto M3\npair s1 p\npair s1 q\npair s2 q\npair t p\n") == 5);
	CHECK(line("map f\nfrom X4\nto M3\npair s1 z\n") == 4);
	CHECK(line("map f\nfrom X4 restrict s1\nto M3\npair t p\n") == 4);       // t is outside S
	CHECK(line("map f\nfrom X4 restrict s1 s1\nto M3\n") == 2);
	CHECK(line("map f\nfrom X4 restrict\nto M3\n") == 2);
	CHECK(line("map f\nfrom Nowhere\nto M3\n") == 2);
	CHECK(line("map f\nfrom X4\nto M3\nsend s1 p\n") == 4);
	CHECK(line("from X4\nto M3\npair s1 p\npair s2 p\npair t p\n") == 0);
}

TEST_CASE("read_map resolves space files next to the map")
{
	TempDir dir;
	dir.write("X4.cap", serialize_space(space_x4()));
	dir.write("target", serialize_space(space_m3()));
	dir.write("f.map", "map f\nfrom X4\nto M3\npair s1 p\npair s2 q\npair t p\n");
	dir.write("g.map", "map g\nfrom X4\nto M3\npair s1 p\npair s2 q\npair t p\n");
	CHECK_THROWS_AS(read_map(dir.path / "f.map"), ParseError);  // no M3.cap, no file M3
	auto f = read_map(dir.path / "f.map", {space_m3()});
	CHECK(f.assignment == std::vector<PointId>{0, 1, 0});
	dir.write("M3", serialize_space(space_m3()));
	CHECK(read_map(dir.path / "g.map").target.name() == "M3");
}

TEST_CASE("function lists")
{
	auto x = FiniteCapSpace::discrete("X", {"u", "v"});
	FunctionSpace fs(x, space_m3());
	auto ids = parse_functions("h1: u->p v->q\n# comment\nh2: v->r u->r\n", fs);
	CHECK(ids == std::vector<std::size_t>{*fs.index_of({0, 1}), *fs.index_of({2, 2})});
	PrincipalFilter filter(fs.carrier(), std::span<const PointId>(ids.data(), ids.size()));
	auto text = serialize_functions(fs, filter);
	auto again = parse_functions(text, fs);
	std::sort(ids.begin(), ids.end());
	std::sort(again.begin(), again.end());
	CHECK(again == ids);

	auto line = [&](const std::string& t) { return error_line([&] { parse_functions(t, fs); }); };
	CHECK(line("h1: u->p\n") == 1);
	CHECK(line("h1: u->p v->q\nh2: u->p u->q v->q\n") == 2);
	CHECK(line("h1 u->p v->q\n") == 1);
	CHECK(line("h1: u->z v->q\n") == 1);
	CHECK(line("h1: w->p v->q\n") == 1);
	CHECK(line("h1: up v->q\n") == 1);
	CHECK(line("# nothing\n") == 0);

	// Against a designated list, maps outside it are rejected.
	FunctionSpace listed(x, space_m3(), {{0, 1}}, {"only"});
	CHECK(parse_functions("k: u->p v->q\n", listed) == std::vector<std::size_t>{0});
	CHECK(error_line([&] { parse_functions("k: u->q v->q\n", listed); }) == 1);
}

TEST_CASE("subsets")
{
	auto m3 = space_m3();
	CHECK(parse_subset("{p,r}", m3) == (PointSet::single(0) | PointSet::single(2)));
	CHECK(parse_subset("q", m3) == PointSet::single(1));
	CHECK(parse_subset(" { p , q } ", m3) == PointSet::all(2));
	CHECK_THROWS(parse_subset("{}", m3));
	CHECK_THROWS(parse_subset("{p,z}", m3));

	// Point names containing commas are split at top level only.
	auto y3 = space_y3();
	auto r = build_extension_converse(y3, extract_selection_witness(y3, Tensor::Plus, *is_regular(y3, Tensor::Plus)),
	                                  Tensor::Plus);
	CHECK(parse_subset("{(a,a0),(y,a0),x_inf}", r.x) ==
	      (PointSet::single(0) | PointSet::single(2) | PointSet::single(4)));
}
