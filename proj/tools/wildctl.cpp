// wildctl: command-line front end for the wild sheaf toolkit.
//
// Exit codes: 0 success, 1 computation error, 2 usage or schema error.
// Errors go to stderr as {"error": {"kind": ..., "message": ...}}.

#include "wild/io.hpp"
#include "wild/svg.hpp"
#include "wild/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

namespace {

using wild::io::Json;

enum Exit { Ok = 0, ComputationFailure = 1, UsageFailure = 2 };

struct Settings {
    std::string input;
    std::string output;
    std::uint64_t seed = wild::verify::Options{}.seed;
    int probes = -1;
    std::string grid_eps;
};

std::string read_input(const std::string& path) {
    if (path.empty()) throw wild::SchemaError("--input is required for this command");
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw wild::SchemaError("cannot read input file '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_input(path));
    } catch (const Json::parse_error& e) {
        throw wild::SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

void emit(const Settings& s, const std::string& text) {
    if (s.output.empty() || s.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(s.output, std::ios::binary);
    if (!out) throw wild::SchemaError("cannot write output file '" + s.output + "'");
    out << text;
}

void emit(const Settings& s, const Json& j) { emit(s, j.dump(2) + "\n"); }

int report_error(const char* kind, const std::string& message, int code) {
    std::cerr << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
    return code;
}

wild::Rational rational_field(const Json& j, const char* key) { return wild::io::rational_from_json(wild::io::field(j, key)); }

wild::verify::Options verify_options(const Settings& s) {
    wild::verify::Options o;
    o.seed = s.seed;
    if (s.probes >= 0) o.probes = s.probes;
    if (!s.grid_eps.empty()) {
        const wild::Rational eps = wild::parse_rational(s.grid_eps);
        if (!(eps > 0)) throw wild::SchemaError("--grid-eps must be positive");
        o.grid_eps = eps;
    }
#ifdef WILD_SOURCE_DIR
    o.fixture_path = std::string(WILD_SOURCE_DIR) + "/data/doublewell.json";
    o.golden_path = std::string(WILD_SOURCE_DIR) + "/tests/golden/doublewell_pishriek.json";
#endif
    return o;
}

int run_verify(const Settings& s) {
    const auto opts = verify_options(s);
    std::cout << "seed " << opts.seed << "\n";
    Json rows = Json::array();
    bool all = true;
    double total = 0;
    for (const auto& c : wild::verify::criteria()) {
        const auto r = wild::verify::run_criterion(c, opts);
        std::cout << wild::verify::format_result(r) << std::endl;
        all = all && r.pass;
        total += r.seconds;
        rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    std::cout << (all ? "all suites pass" : "some suites FAIL") << " in " << total << "s\n";
    if (!s.output.empty()) {
        Settings file = s;
        emit(file, Json{{"seed", opts.seed}, {"pass", all}, {"criteria", rows}});
    }
    return all ? Ok : ComputationFailure;
}

int run_invert_check(const Settings& s) {
    const wild::PLFunction f = wild::io::plfunction_from_json(read_json(s.input));
    std::vector<wild::Rational> extra;
    if (s.probes > 0) {
        wild::verify::Rng rng(s.seed);
        for (int i = 0; i < s.probes; ++i) extra.push_back(wild::verify::random_rational(rng, -8, 8, 12));
    }
    const auto rep = wild::inversion_report(f, extra);
    Json probes = Json::array();
    for (const auto& x : rep.probes) probes.push_back(wild::io::to_json(x));
    emit(s, Json{{"ok", rep.ok},
                 {"probes", probes},
                 {"firstFailure", rep.first_failure ? wild::io::to_json(*rep.first_failure) : Json(nullptr)}});
    return rep.ok ? Ok : ComputationFailure;
}

int run_plot(const Settings& s) {
    const Json j = read_json(s.input);
    if (j.is_object() && j.contains("pieces")) {
        emit(s, wild::svg::render_transform(wild::io::transform_from_json(j)));
    } else if (j.is_array()) {
        emit(s, wild::svg::render_barcode(wild::io::wobject_from_json(j)));
    } else {
        throw wild::SchemaError("plot expects a barcode array or a piecewise transform");
    }
    return Ok;
}

int dispatch(const std::string& cmd, const Settings& s) {
    using namespace wild;
    if (cmd == "legendre") {
        emit(s, io::to_json(legendre(io::plfunction_from_json(read_json(s.input)))));
    } else if (cmd == "pishriek") {
        emit(s, io::to_json(pi_shriek(io::wsheaf_from_json(read_json(s.input)))));
    } else if (cmd == "fourier") {
        emit(s, io::to_json(fourier_transform(io::wsheaf_from_json(read_json(s.input)))));
    } else if (cmd == "stalk") {
        const Json j = read_json(s.input);
        const WSheaf sheaf = io::wsheaf_from_json(io::field(j, "sheaf"));
        if (j.contains("y"))
            emit(s, io::to_json(fourier_stalk(sheaf, rational_field(j, "y"))));
        else if (j.contains("x"))
            emit(s, io::to_json(sheaf_stalk(sheaf, rational_field(j, "x"))));
        else
            throw SchemaError("stalk needs a parameter 'y' (transform stalk) or 'x' (sheaf stalk)");
    } else if (cmd == "tensor") {
        const Json j = read_json(s.input);
        emit(s, io::to_json(tensor(io::wobject_from_json(io::field(j, "a")), io::wobject_from_json(io::field(j, "b")))));
    } else if (cmd == "convolve") {
        const Json j = read_json(s.input);
        emit(s, io::to_json(convolve_stalk(io::wsheaf_from_json(io::field(j, "a")), io::wsheaf_from_json(io::field(j, "b")),
                                           rational_field(j, "x"))));
    } else if (cmd == "invert-check") {
        return run_invert_check(s);
    } else if (cmd == "verify") {
        return run_verify(s);
    } else if (cmd == "plot") {
        return run_plot(s);
    }
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wildctl: barcodes, PL potentials, wild sheaves on the line and their Fourier transform"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_option("--input", s.input, "input JSON file ('-' for stdin)");
    app.add_option("--output", s.output, "output file (default stdout)");
    app.add_option("--seed", s.seed, "seed for random corpora and probes");
    app.add_option("--probes", s.probes, "number of random probes")->check(CLI::NonNegativeNumber);
    app.add_option("--grid-eps", s.grid_eps, "grid step p/q for the Koszul oracle");

    const std::pair<const char*, const char*> commands[] = {
        {"legendre", "concave conjugate of a convex PL function"},
        {"pishriek", "compactly supported cohomology of a sheaf, as a barcode"},
        {"fourier", "piecewise Fourier transform of a sheaf"},
        {"stalk", "stalk of the transform at y, or of the sheaf at x"},
        {"tensor", "derived tensor product of two barcodes"},
        {"convolve", "stalk at x of the convolution of two sheaves"},
        {"invert-check", "check the inversion theorem for a convex PL function"},
        {"verify", "run the acceptance suite"},
        {"plot", "render a barcode or transform as SVG"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return UsageFailure;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, s);
    } catch (const wild::SchemaError& e) {
        return report_error("schema", e.what(), UsageFailure);
    } catch (const Json::exception& e) {
        return report_error("schema", e.what(), UsageFailure);
    } catch (const wild::ComputationError& e) {
        return report_error("computation", e.what(), ComputationFailure);
    }
}
