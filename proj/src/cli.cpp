#include "storyline/cli.hpp"

#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "storyline/io.hpp"
#include "storyline/model.hpp"
#include "storyline/oracle.hpp"
#include "storyline/reduction.hpp"
#include "storyline/render.hpp"
#include "storyline/solver.hpp"
#include "storyline/testgen.hpp"

namespace storyline::cli {

namespace {

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kError = 2;

ExtensionProblem load_problem(const std::string& path) {
    return io::parse_problem(io::read_file(path));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"storyline extension toolkit"};
    app.require_subcommand(1);

    std::string problem_path, instance_path, layout_path, out_path;
    std::optional<int> chi_override;
    bool want_min_chi = false, no_dominance = false, no_suffix = false, no_labels = false;
    std::vector<int> items;
    int bins = 0, capacity = 0;
    std::uint32_t seed = 1;

    auto* validate = app.add_subcommand("validate", "check a problem file");
    validate->add_option("problem", problem_path)->required();

    auto* solve = app.add_subcommand("solve", "decide a problem with the layered program");
    solve->add_option("problem", problem_path)->required();
    solve->add_option("--chi", chi_override, "override the crossing budget");
    solve->add_option("--witness", out_path, "write a witness layout here on accept");
    solve->add_flag("--min-chi", want_min_chi, "report the smallest accepting budget");
    solve->add_flag("--no-dominance-prune", no_dominance);
    solve->add_flag("--no-suffix-prune", no_suffix);

    auto* oracle = app.add_subcommand("oracle", "decide a small problem by exhaustion");
    oracle->add_option("problem", problem_path)->required();
    oracle->add_option("--witness", out_path);

    auto* gen = app.add_subcommand("gen-eubp", "emit the hardness instance of a packing input");
    gen->add_option("--items", items)->required()->delimiter(',');
    gen->add_option("--bins", bins)->required();
    gen->add_option("--capacity", capacity)->required();
    gen->add_option("--out", out_path)->required();

    auto* render = app.add_subcommand("render", "draw a problem's layout as SVG");
    render->add_option("problem", problem_path)->required();
    render->add_option("--layout", layout_path, "full layout file (default: the fixed layout)");
    render->add_option("--out", out_path)->required();
    render->add_flag("--no-labels", no_labels);

    auto* show = app.add_subcommand("stats", "print problem statistics");
    show->add_option("problem", problem_path)->required();

    auto* random = app.add_subcommand("gen-random", "emit a small random problem");
    random->add_option("--seed", seed);
    random->add_option("--out", out_path)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kAccept;
        }
        err << e.what() << "\n";
        return kError;
    }

    try {
        if (validate->parsed()) {
            load_problem(problem_path);
            out << "valid\n";
            return kAccept;
        }

        if (solve->parsed()) {
            ExtensionProblem problem = load_problem(problem_path);
            SolveOptions options;
            options.dominance_prune = !no_dominance;
            options.suffix_prune = !no_suffix;
            if (want_min_chi) {
                auto best = minimum_chi(problem, options);
                if (!best) {
                    out << "no valid extension\n";
                    return kReject;
                }
                out << "min-chi " << *best << "\n";
                return kAccept;
            }
            if (chi_override) problem.chi = *chi_override;
            if (problem.chi < 0 ||
                local_crossing_number(induced_sub_storyline(problem.full,
                                                            problem.fixed_characters),
                                      problem.fixed_layout) > problem.chi) {
                out << "reject\n";
                return kReject;
            }
            SolveResult result = storyline::solve(problem, options);
            if (!result.accepted) {
                out << "reject\n";
                return kReject;
            }
            out << "accept\n";
            if (!out_path.empty()) {
                io::write_file(out_path, io::serialize_layout(*result.witness));
            }
            return kAccept;
        }

        if (oracle->parsed()) {
            OracleResult result = brute_force_solve(load_problem(problem_path));
            if (!result.accepted) {
                out << "reject\n";
                return kReject;
            }
            out << "accept\n";
            if (!out_path.empty()) {
                io::write_file(out_path, io::serialize_layout(*result.witness));
            }
            return kAccept;
        }

        if (gen->parsed()) {
            EubpInstance instance{items, bins, capacity};
            ExtensionProblem problem = reduce(instance);
            io::write_file(out_path, io::serialize_problem(problem));
            ProblemStats s = stats(problem);
            out << "chi " << problem.chi << " tau " << s.tau << " characters "
                << problem.full.characters.size() << "\n";
            return kAccept;
        }

        if (render->parsed()) {
            ExtensionProblem problem = load_problem(problem_path);
            RenderOptions options;
            options.labels = !no_labels;
            if (layout_path.empty()) {
                StorylineInstance sub =
                    induced_sub_storyline(problem.full, problem.fixed_characters);
                io::write_file(out_path, render_svg(sub, problem.fixed_layout, options));
            } else {
                Layout layout = io::parse_layout(io::read_file(layout_path));
                io::write_file(out_path, render_svg(problem.full, layout, options));
            }
            return kAccept;
        }

        if (show->parsed()) {
            ProblemStats s = stats(load_problem(problem_path));
            out << "n " << s.n << "\nk " << s.k << "\ntau " << s.tau << "\nmu " << s.mu
                << "\nsigma " << s.sigma << "\n";
            return kAccept;
        }

        if (random->parsed()) {
            std::mt19937 rng(seed);
            ExtensionProblem problem = testgen::random_problem_retrying(rng);
            io::write_file(out_path, io::serialize_problem(problem));
            out << "seed " << seed << "\n";
            return kAccept;
        }
    } catch (const io::FormatError& e) {
        err << "input error [" << e.code << "]: " << e.what() << "\n";
        return kError;
    } catch (const ReductionError& e) {
        err << "reduction error: " << e.what() << "\n";
        return kError;
    } catch (const OracleSizeError& e) {
        err << "oracle limit: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

}  // namespace storyline::cli
