// caplab: command-line front end.
//
// Exit codes: 0 the property holds / the command succeeded, 1 a witness was
// found or a property failed, 2 usage or input error, 3 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "caplab/constructions.hpp"
#include "caplab/corpus.hpp"
#include "caplab/extension.hpp"
#include "caplab/homspace.hpp"
#include "caplab/io.hpp"
#include "caplab/properties.hpp"
#include "caplab/suites.hpp"

using namespace caplab;
namespace fs = std::filesystem;

namespace {

constexpr int kHolds = 0;
constexpr int kWitness = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct Globals {
	std::string oplus;
	std::uint64_t seed = 1;
	std::size_t trials = 0;
	std::string format = "text";

	Tensor tensor() const { return oplus.empty() ? Tensor::Plus : parse_tensor(oplus); }
	bool kv() const { return format == "kv"; }
};

/// `key: value` in text mode, `key=value` in kv mode.
class Out {
public:
	explicit Out(bool kv) : kv_(kv) {}

	void field(const std::string& key, const std::string& value) const
	{
		if (kv_)
			std::cout << key << "=" << quote(value) << "\n";
		else
			std::cout << key << ": " << value << "\n";
	}
	void field(const std::string& key, bool value) const { field(key, std::string(value ? "true" : "false")); }
	void field(const std::string& key, const Weight& value) const { field(key, value.to_string()); }
	void line(const std::string& text) const
	{
		if (!kv_)
			std::cout << text << "\n";
	}

private:
	static std::string quote(const std::string& v)
	{
		return v.find_first_of(" \t") == std::string::npos ? v : "\"" + v + "\"";
	}
	bool kv_;
};

std::string format_triple(const FiniteCapSpace& y, PointId a, PointId b, PointId c)
{
	return "(" + y.point_name(a) + "," + y.point_name(b) + "," + y.point_name(c) + ")";
}

void print_witness(const Out& out, const FiniteCapSpace& y, const RegularityWitness& w)
{
	std::string a, l, s, h;
	for (std::size_t i = 0; i < w.size(); ++i) {
		const std::string sep = i ? "," : "";
		a += sep + w.labels[i];
		l += sep + w.labels[i] + "->" + y.point_name(w.l[i]);
		s += (i ? " " : "") + w.labels[i] + "->" + y.format_set(w.selection[i]);
		if (w.h[i])
			h += (h.empty() ? "" : ",") + w.labels[i];
	}
	out.field("A", "{" + a + "}");
	out.field("l", l);
	out.field("S", s);
	out.field("H", "{" + h + "}");
	out.field("y0", y.point_name(w.y0));
	out.field("lhs", w.lhs);
	out.field("rhs", w.rhs);
}

SpaceMap load_map(const std::string& path, const std::vector<FiniteCapSpace>& extra)
{
	return read_map(path, extra);
}

int cmd_validate(const Globals& g, const std::string& path)
{
	Out out(g.kv());
	auto space = read_space(path);
	auto r = validate(space);
	out.field("space", space.name());
	out.field("points", space.format_set(space.points()));
	std::string grid;
	for (const auto& w : r.grid)
		grid += (grid.empty() ? "" : " ") + w.to_string();
	out.field("grid", grid);
	out.field("centered", space.centered());
	out.field("valid", r.valid);
	for (const auto& v : r.violations)
		out.field("violation", v.message);
	return r.valid ? kHolds : kWitness;
}

struct CheckArgs {
	std::string property;
	std::string space;
	std::string subset;
	std::string alpha;
	bool uniform = false;
	std::size_t k = 0;
};

int cmd_check(const Globals& g, const CheckArgs& a)
{
	Out out(g.kv());
	auto y = read_space(a.space);
	const Tensor t = g.tensor();
	out.field("space", y.name());
	out.field("oplus", std::string(to_string(t)));
	out.field("property", a.property);

	if (a.property == "regular") {
		auto w = is_regular(y, t);
		out.field("holds", !w);
		if (w) {
			out.field("triple", format_triple(y, w->a, w->b, w->y));
			out.field("lhs", w->lhs);
			out.field("rhs", w->rhs);
		}
		return w ? kWitness : kHolds;
	}
	if (a.property == "regularity-points") {
		auto pts = regularity_points(y, t);
		out.field("regularity_points", y.format_set(pts));
		out.field("holds", pts == y.points());
		return pts == y.points() ? kHolds : kWitness;
	}
	if (a.property == "selection") {
		const std::size_t k = a.k ? a.k : y.size();
		auto w = check_selection_regularity(y, t, k);
		out.field("k", std::to_string(k));
		out.field("holds", !w);
		if (w)
			print_witness(out, y, *w);
		return w ? kWitness : kHolds;
	}
	if (a.property == "diagonal") {
		auto w = is_diagonal(y, t);
		out.field("holds", !w);
		if (w) {
			out.field("triple", format_triple(y, w->x, w->y, w->c));
			out.field("lhs", w->lhs);
			out.field("rhs", w->rhs);
		}
		return w ? kWitness : kHolds;
	}
	if (a.property == "strict") {
		if (a.subset.empty())
			throw UsageError("check strict needs --subset");
		const PointSet s = parse_subset(a.subset, y);
		out.field("subset", y.format_set(s));
		out.field("uniform", a.uniform);
		if (a.alpha.empty()) {
			for (const auto& alpha : y.grid()) {
				if (alpha.is_infinite())
					continue;
				if (auto w = is_strict(y, s, alpha, t, a.uniform)) {
					out.field("holds", false);
					out.field("alpha", alpha);
					if (w->x)
						out.field("x", y.point_name(*w->x));
					out.field("B", y.format_set(w->b));
					return kWitness;
				}
			}
			out.field("holds", true);
			return kHolds;
		}
		const Weight alpha = Weight::parse(a.alpha);
		out.field("alpha", alpha);
		auto w = is_strict(y, s, alpha, t, a.uniform);
		out.field("holds", !w);
		if (w) {
			if (w->x)
				out.field("x", y.point_name(*w->x));
			out.field("B", y.format_set(w->b));
		}
		return w ? kWitness : kHolds;
	}
	throw UsageError("unknown property '" + a.property +
	                 "' (expected regular, regularity-points, selection, diagonal, strict)");
}

int cmd_classify(const Globals& g, const std::string& path)
{
	Out out(g.kv());
	auto y = read_space(path);
	auto c = classify(y);
	out.field("space", y.name());
	out.field("pre_approach", c.pre_approach);
	out.field("approach", c.approach);
	out.field("non_archimedean_approach", c.non_archimedean_approach);
	out.field("regular", c.regular);
	out.field("strongly_regular", c.strongly_regular);
	out.field("convergence_embedded", c.convergence_embedded);
	out.field("topological", c.topological);
	return kHolds;
}

int cmd_hom_limit(const Globals& g, const std::string& xp, const std::string& yp, const std::string& fns,
                  const std::string& at)
{
	Out out(g.kv());
	auto x = read_space(xp);
	auto y = read_space(yp);
	auto f = load_map(at, {x, y});
	if (!(f.source == x) || !(f.target == y))
		throw UsageError("--at must be a map from '" + x.name() + "' to '" + y.name() + "'");
	FunctionSpace space(x, y);
	auto ids = read_functions(fns, space);
	PrincipalFilter::Core core(space.size());
	for (auto id : ids)
		core.set(id);
	PrincipalFilter filter(space.carrier(), core);
	out.field("filter_size", std::to_string(filter.points().size()));
	out.field("hom_limit", hom_limit(space, filter, f.assignment));
	out.field("hom_min", hom_min(x, y, f.assignment));
	return kHolds;
}

int cmd_default(const Globals& g, const std::string& path)
{
	Out out(g.kv());
	auto f = load_map(path, {});
	const Tensor t = g.tensor();
	out.field("map", f.name);
	out.field("oplus", std::string(to_string(t)));
	Weight m = contraction_default(f, t);
	out.field("default", m);
	out.field("contraction", m.is_zero());
	return kHolds;
}

struct ExtendArgs {
	std::string x, subset, map, alpha;
	bool regular_only = false;
};

int cmd_extend(const Globals& g, const ExtendArgs& a)
{
	Out out(g.kv());
	auto x = read_space(a.x);
	auto f = load_map(a.map, {x});
	const Tensor t = g.tensor();
	const Weight alpha = Weight::parse(a.alpha);
	auto p = make_extension_problem(x, f, t, alpha);
	if (!a.subset.empty() && parse_subset(a.subset, x) != p.s)
		throw UsageError("--subset " + a.subset + " differs from the source of the map " + x.format_set(p.s));

	out.field("S", x.format_set(p.s));
	out.field("alpha", alpha);
	out.field("oplus", std::string(to_string(t)));
	const PointSet domain = extension_domain(p);
	out.field("domain", x.format_set(domain));
	auto candidates = enumerate_extensions(p, a.regular_only);
	out.field("candidates", std::to_string(candidates.size()));
	const Weight bound = combine(alpha, alpha, t);
	const bool strict = !is_strict(x, p.s, alpha, t, false);
	out.field("strict", strict);
	bool holds = true;
	for (std::size_t i = 0; i < candidates.size(); ++i) {
		const auto& c = candidates[i];
		std::string values;
		for (PointId q : c.domain - p.s)
			values += (values.empty() ? "" : " ") + x.point_name(q) + "->" + p.y.point_name(c.g[q]);
		Weight m = contraction_default(extension_map(p, c), t);
		if (strict && c.regular && bound < m)
			holds = false;
		out.field("g" + std::to_string(i), (values.empty() ? std::string("f") : values) + " m=" + m.to_string() +
		                                       (c.regular ? " regular" : ""));
	}
	out.field("bound", bound);
	out.field("holds", holds);
	return holds ? kHolds : kWitness;
}

void write_file(const fs::path& path, const std::string& text)
{
	std::ofstream f(path);
	if (!f)
		throw std::runtime_error("cannot write " + path.string());
	f << text;
}

int cmd_construct(const Globals& g, const std::string& kind, const std::string& path, const std::string& dir)
{
	Out out(g.kv());
	auto y = read_space(path);
	const Tensor t = g.tensor();
	if (kind != "thm1" && kind != "extension")
		throw UsageError("construct expects thm1 or extension");
	auto triple = is_regular(y, t);
	if (!triple) {
		out.field("space", y.name());
		out.field("regular", true);
		std::cerr << "caplab: '" << y.name() << "' is " << to_string(t) << "-regular; nothing to construct\n";
		return kWitness;
	}
	auto w = extract_selection_witness(y, t, *triple);
	auto r = kind == "thm1" ? build_thm1_converse(y, w, t) : build_extension_converse(y, w, t);
	out.field("kind", r.kind);
	out.field("space", r.x.name());
	out.field("points", std::to_string(r.x.size()));
	out.field("greater", r.greater);
	out.field("smaller", r.smaller);
	for (const auto& line : r.transcript)
		out.line(line);

	if (!dir.empty()) {
		fs::create_directories(dir);
		const fs::path d(dir);
		write_file(d / (r.x.name() + ".cap"), serialize_space(r.x));
		write_file(d / (y.name() + ".cap"), serialize_space(y));
		write_file(d / "f.map", serialize_map(r.f));
		if (r.g)
			write_file(d / "g.map", serialize_map(*r.g));
		if (r.functions && r.filter)
			write_file(d / "F0.fns", serialize_functions(*r.functions, *r.filter));
		if (r.kind == "extension" && r.filter)
			write_file(d / "H.txt", r.x.format_set(r.x.to_set(*r.filter)) + "\n");
		std::string transcript;
		for (const auto& line : r.transcript)
			transcript += line + "\n";
		write_file(d / "transcript.txt", transcript);
		out.field("out", d.string());
	}
	return kHolds;
}

int cmd_refute(const Globals& g, const std::string& path)
{
	Out out(g.kv());
	auto y = read_space(path);
	const Tensor t = g.tensor();
	out.field("space", y.name());
	out.field("oplus", std::string(to_string(t)));
	auto r = find_and_refute(y, t);
	if (!r) {
		out.field("result", std::string("regular"));
		return kHolds;
	}
	out.field("result", std::string("refuted"));
	out.field("witness", "y0=" + y.point_name(r->first.witness.y0) + " lhs=" + r->first.witness.lhs.to_string() +
	                         " rhs=" + r->first.witness.rhs.to_string());
	out.field("thm1", r->first.greater.to_string() + " > " + r->first.smaller.to_string());
	out.field("extension", r->second.smaller.to_string() + " < " + r->second.greater.to_string());
	return kWitness;
}

struct VerifyArgs {
	std::string suite;
	std::size_t exhaustive = 3;
	std::string grid;
};

int cmd_verify(const Globals& g, const VerifyArgs& a)
{
	SuiteConfig c;
	c.suite = a.suite;
	c.seed = g.seed;
	c.trials = g.trials;
	c.exhaustive = a.exhaustive;
	if (!g.oplus.empty())
		c.tensor = parse_tensor(g.oplus);
	c.format = g.kv() ? OutputFormat::KeyValue : OutputFormat::Text;
	if (!a.grid.empty()) {
		std::stringstream in(a.grid);
		for (std::string tok; std::getline(in, tok, ',');)
			c.grid.push_back(Weight::parse(tok));
	}
	auto r = run_suite(c);
	for (const auto& line : r.transcript)
		std::cout << line << "\n";
	return r.passed ? kHolds : kWitness;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"caplab: finite convergence-approach spaces"};
	app.require_subcommand(1);
	Globals g;
	app.add_option("--oplus", g.oplus, "Tensor: plus or max")->check(CLI::IsMember({"plus", "max", "+", "v"}));
	app.add_option("--seed", g.seed, "Random seed");
	app.add_option("--trials", g.trials, "Number of trials (0: suite default)");
	app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "kv"}));

	std::function<int()> run;

	std::string space_path;
	auto* validate_cmd = app.add_subcommand("validate", "Validate a .cap file");
	validate_cmd->add_option("--space,space", space_path, "Space file")->required();
	validate_cmd->callback([&] { run = [&] { return cmd_validate(g, space_path); }; });

	CheckArgs check;
	auto* check_cmd = app.add_subcommand("check", "Decide a property: regular, regularity-points, selection, diagonal, strict");
	check_cmd->add_option("property", check.property, "Property")->required();
	check_cmd->add_option("--space", check.space, "Space file")->required();
	check_cmd->add_option("--subset", check.subset, "Subset {a,b,...} (strict)");
	check_cmd->add_option("--alpha", check.alpha, "Level (strict; default: every grid value)");
	check_cmd->add_flag("--uniform", check.uniform, "Uniform strictness");
	check_cmd->add_option("--k", check.k, "Index-set bound for the selection search (default |Y|)");
	check_cmd->callback([&] { run = [&] { return cmd_check(g, check); }; });

	auto* classify_cmd = app.add_subcommand("classify", "Classify a space");
	classify_cmd->add_option("--space,space", space_path, "Space file")->required();
	classify_cmd->callback([&] { run = [&] { return cmd_classify(g, space_path); }; });

	std::string hx, hy, hfns, hat;
	auto* hom_cmd = app.add_subcommand("hom-limit", "Evaluate the hom-structure at a map");
	hom_cmd->add_option("--x", hx, "Source space")->required();
	hom_cmd->add_option("--y", hy, "Target space")->required();
	hom_cmd->add_option("--filter-file", hfns, "Core of the filter on Y^X (.fns)")->required();
	hom_cmd->add_option("--at", hat, "Map f (.map)")->required();
	hom_cmd->callback([&] { run = [&] { return cmd_hom_limit(g, hx, hy, hfns, hat); }; });

	std::string map_path;
	auto* default_cmd = app.add_subcommand("default", "Default of contraction of a map");
	default_cmd->add_option("--map,map", map_path, "Map file")->required();
	default_cmd->callback([&] { run = [&] { return cmd_default(g, map_path); }; });

	ExtendArgs ext;
	auto* extend_cmd = app.add_subcommand("extend", "Admissible extensions of a contraction");
	extend_cmd->add_option("--x", ext.x, "Ambient space")->required();
	extend_cmd->add_option("--subset", ext.subset, "S (must match the map's source)");
	extend_cmd->add_option("--map", ext.map, "Contraction S -> Y")->required();
	extend_cmd->add_option("--alpha", ext.alpha, "Level alpha")->default_val("0");
	extend_cmd->add_flag("--regular-only", ext.regular_only, "Only regular extensions");
	extend_cmd->callback([&] { run = [&] { return cmd_extend(g, ext); }; });

	std::string kind, out_dir;
	auto* construct_cmd = app.add_subcommand("construct", "Build a counterexample: thm1 or extension");
	construct_cmd->add_option("kind", kind, "thm1 or extension")->required()->check(CLI::IsMember({"thm1", "extension"}));
	construct_cmd->add_option("--space", space_path, "Non-regular space")->required();
	construct_cmd->add_option("--out", out_dir, "Directory for the built files");
	construct_cmd->callback([&] { run = [&] { return cmd_construct(g, kind, space_path, out_dir); }; });

	auto* refute_cmd = app.add_subcommand("refute", "Find a regularity witness and build both counterexamples");
	refute_cmd->add_option("--space,space", space_path, "Space file")->required();
	refute_cmd->callback([&] { run = [&] { return cmd_refute(g, space_path); }; });

	VerifyArgs verify;
	auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
	verify_cmd->add_option("suite", verify.suite, "Suite")->required()->check(CLI::IsMember(suite_names()));
	verify_cmd->add_option("--exhaustive", verify.exhaustive, "Exhaustive part up to this many points")
		->check(CLI::Range(1, 4));
	verify_cmd->add_option("--grid", verify.grid, "Entry grid, comma-separated weights");
	verify_cmd->callback([&] { run = [&] { return cmd_verify(g, verify); }; });

	for (auto* sub : app.get_subcommands({}))
		sub->fallthrough();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : kUsage;
	}

	try {
		return run();
	} catch (const UsageError& e) {
		std::cerr << "caplab: " << e.what() << "\n";
		return kUsage;
	} catch (const ParseError& e) {
		std::cerr << "caplab: " << e.what() << "\n";
		return kUsage;
	} catch (const std::invalid_argument& e) {
		std::cerr << "caplab: " << e.what() << "\n";
		return kUsage;
	} catch (const std::length_error& e) {
		std::cerr << "caplab: " << e.what() << "\n";
		return kUsage;
	} catch (const std::exception& e) {
		std::cerr << "caplab: internal error: " << e.what() << "\n";
		return kInternal;
	}
}
