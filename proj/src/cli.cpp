#include "affiso/cli.hpp"

#include <algorithm>
#include <optional>

#include "CLI11.hpp"

#include "affiso/body_spec.hpp"
#include "affiso/error.hpp"
#include "affiso/report_io.hpp"

namespace affiso::cli {

namespace {

constexpr const char* kDescription =
    "Support-function calculus and affine isoperimetric checks for planar convex bodies.\n"
    "Bodies are read from JSON BodySpec files (see docs/body_spec.schema.json).\n"
    "All angles (alpha, --center, sample positions) are in radians; samples sit at\n"
    "theta_j = 2*pi*j/M. The grid size M comes from --grid, else the spec's \"grid\"\n"
    "field, else AFFISO_GRID, else 2048.\n"
    "Exit status: 0 success, 1 inequality violated beyond --tol, 2 input error.";

struct Common {
    std::optional<int> grid;
    double eq_tol = 1e-6;
    double tol = 1e-8;

    CheckOptions check_options() const {
        CheckOptions o;
        o.eq_tol = eq_tol;
        o.tol = tol;
        return o;
    }
    Grid make_grid() const { return Grid(grid ? *grid : default_grid_size()); }
};

void add_grid(CLI::App* cmd, Common& c) {
    cmd->add_option("--grid", c.grid, "Number of equispaced samples M (even, >= 16)");
}

void add_tolerances(CLI::App* cmd, Common& c) {
    cmd->add_option("--eq-tol", c.eq_tol, "Relative deficit below which equality is tested")
        ->capture_default_str();
    cmd->add_option("--tol", c.tol, "Relative deficit below -tol counts as a violation")
        ->capture_default_str();
}

int report_check(std::ostream& out, const InequalityReport& r, double tol) {
    write_json(out, to_json(r, tol));
    return r.holds(tol) ? kExitOk : kExitViolation;
}

int run_check(const std::string& which, const std::vector<std::string>& files, const Common& c,
              std::ostream& out) {
    const auto opts = c.check_options();
    const std::size_t wanted = (which == "mixed" || which == "main") ? 2 : 1;
    if (files.size() != wanted)
        throw InputError("check " + which + " expects " + std::to_string(wanted) +
                         " body file(s), got " + std::to_string(files.size()));
    if (which == "ai") return report_check(out, check_affine_iso(load_body_spec(files[0], c.grid).body(), opts), c.tol);
    if (which == "bs")
        return report_check(out, check_blaschke_santalo(load_body_spec(files[0], c.grid).body(), opts), c.tol);
    const auto first = load_body_spec(files[0], c.grid);
    const auto second = load_body_spec(files[1], c.grid);
    if (!(first.grid == second.grid)) throw InputError("the two specs use different grids");
    if (which == "mixed") return report_check(out, check_mixed(first.function, second.function, opts), c.tol);
    return report_check(out, check_main(first.function, second.function, opts), c.tol);
}

int run_transform(const std::string& file, double lambda, double center, const Common& c,
                  std::ostream& out) {
    const auto spec = load_body_spec(file, c.grid);
    const TransformParams p{lambda, center};
    p.validate();
    const auto tu = transform(spec.function, p);
    Json j;
    j["lambda"] = lambda;
    j["center"] = center;
    j["grid"] = tu.grid().size();
    j["values"] = samples_json(tu);
    j["invariance"] = to_json(check_invariances(spec.function, spec.function, p));
    write_json(out, j);
    return kExitOk;
}

int run_demo(std::uint64_t seed, int steps, bool miscentered, const Common& c, std::ostream& out,
             std::ostream& err) {
    if (steps < 0) throw InputError("--steps must be nonnegative");
    DemoOptions opts;
    opts.seed = seed;
    opts.steps = steps;
    opts.skip_balancing = miscentered;
    opts.grid = c.make_grid();
    const auto trace = demo_maximize(opts);
    write_trace_csv(out, trace);
    for (const auto& s : trace)
        if (s.concentrating)
            err << "step " << s.step << ": min_u fell to " << format_number(s.min_u)
                << " (concentration)\n";
    return kExitOk;
}

int run_sweep(std::uint64_t seed, int bodies, bool serial, const Common& c, std::ostream& out) {
    if (bodies < 0) throw InputError("--bodies must be nonnegative");
    const auto rows = sweep(seed, bodies, c.make_grid(), c.check_options(),
                            serial ? Execution::serial : Execution::parallel);
    write_sweep_csv(out, rows);
    const bool ok = std::all_of(rows.begin(), rows.end(), [&](const SweepRow& r) {
        return r.ai_relative_deficit >= -c.tol && r.bs_relative_deficit >= -c.tol;
    });
    return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{kDescription, "affiso"};
    app.require_subcommand(1);
    Common c;

    std::string body_file;
    auto* functionals = app.add_subcommand("functionals", "Area, polar area, affine perimeter and J of a body");
    functionals->add_option("body", body_file, "BodySpec JSON file")->required();
    add_grid(functionals, c);

    std::string which;
    std::vector<std::string> check_files;
    auto* check = app.add_subcommand(
        "check", "Check an inequality: ai <body>, bs <body>, mixed <K> <L>, main <F> <h>");
    check->add_option("inequality", which, "ai | bs | mixed | main")
        ->required()
        ->check(CLI::IsMember({"ai", "bs", "mixed", "main"}));
    check->add_option("files", check_files, "BodySpec JSON file(s)")->required();
    add_grid(check, c);
    add_tolerances(check, c);

    double lambda = 1.0;
    double center = 0.0;
    auto* transform_cmd = app.add_subcommand("transform", "Apply T_{lambda,q} and report invariance residuals");
    transform_cmd->add_option("body", body_file, "BodySpec JSON file")->required();
    transform_cmd->add_option("--lambda", lambda, "Dilation parameter lambda > 0")->required();
    transform_cmd->add_option("--center", center, "Transform centre q in radians")->capture_default_str();
    add_grid(transform_cmd, c);

    auto* position_cmd = app.add_subcommand("position", "Translate the body to the minimizer of int h^-2");
    position_cmd->add_option("body", body_file, "BodySpec JSON file")->required();
    add_grid(position_cmd, c);

    auto* decompose_cmd = app.add_subcommand("decompose", "Write a function as a difference of two support functions");
    decompose_cmd->add_option("function", body_file, "BodySpec JSON file")->required();
    add_grid(decompose_cmd, c);

    std::uint64_t seed = 0;
    int steps = 12;
    bool miscentered = false;
    auto* demo = app.add_subcommand("demo-maximize", "CSV trace of a maximizing sequence for I");
    demo->add_option("--seed", seed, "Seed of the random starting body")->capture_default_str();
    demo->add_option("--steps", steps, "Number of steps")->capture_default_str();
    demo->add_flag("--miscentered", miscentered, "Skip balancing and let the sequence concentrate");
    add_grid(demo, c);

    int bodies = 100;
    bool serial = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "CSV of deficits over seeded random convex bodies");
    sweep_cmd->add_option("--bodies", bodies, "Number of bodies")->capture_default_str();
    sweep_cmd->add_option("--seed", seed, "First seed")->capture_default_str();
    sweep_cmd->add_flag("--serial", serial, "Run on one thread");
    add_grid(sweep_cmd, c);
    add_tolerances(sweep_cmd, c);

    try {
        std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
        std::reverse(reversed.begin(), reversed.end());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        if (*functionals) {
            const auto spec = load_body_spec(body_file, c.grid);
            write_json(out, to_json(body_functionals(spec.body())));
            return kExitOk;
        }
        if (*check) return run_check(which, check_files, c, out);
        if (*transform_cmd) return run_transform(body_file, lambda, center, c, out);
        if (*position_cmd) {
            const auto spec = load_body_spec(body_file, c.grid);
            const auto r = position(spec.function);
            write_json(out, to_json(r));
            if (!r.converged) err << "warning: Newton iteration did not converge\n";
            return kExitOk;
        }
        if (*decompose_cmd) {
            const auto spec = load_body_spec(body_file, c.grid);
            write_json(out, to_json(decompose_support(spec.body()), spec.function));
            return kExitOk;
        }
        if (*demo) return run_demo(seed, steps, miscentered, c, out, err);
        if (*sweep_cmd) return run_sweep(seed, bodies, serial, c, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace affiso::cli
