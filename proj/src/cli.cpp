#include "lfroe/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lfroe/errors.hpp"
#include "lfroe/json_io.hpp"

namespace lfroe::cli {

namespace {

using io::json;

struct Streams {
    std::ostream& out;
    std::istream& in;
};

std::string slurp(const std::string& path, std::istream& in)
{
    if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
    std::ifstream file(path);
    if (!file) throw malformed_input("cannot read '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(file), {});
}

json load(const std::string& path, std::istream& in) { return io::parse(slurp(path, in)); }

// Artifacts go to --output when given, stdout otherwise.
void emit(const json& j, const std::string& output, std::ostream& out)
{
    if (output.empty()) {
        out << io::dump(j);
        return;
    }
    std::ofstream file(output);
    if (!file) throw malformed_input("cannot write '" + output + "'");
    file << io::dump(j);
}

void emit_bool(bool value, std::ostream& out) { out << (value ? "true" : "false") << '\n'; }

json prime_json(const big_int& p)
{
    if (mpz_fits_slong_p(p.get_mpz_t())) return json(p.get_si());
    return json(to_string(p));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Coarse classification and K0 invariants of locally finite groups", "lfroe"};
    app.require_subcommand(1);

    std::string output;
    std::vector<std::string> inputs;
    std::size_t depth = 0, lvl = 0;
    std::string prime;
    std::uint64_t exponent = 0;
    bool projection = false;
    std::function<int()> action;

    auto* sn = app.add_subcommand("sn", "supernatural number of a tower");
    sn->add_option("tower", inputs, "tower file")->required()->expected(1);
    sn->add_option("-o,--output", output);
    sn->callback([&] {
        action = [&] {
            emit(io::to_json(supernatural_of_tower(io::tower_from_json(load(inputs[0], in)))), output, out);
            return ok;
        };
    });

    auto* classify = app.add_subcommand("classify", "compare two towers");
    classify->add_option("towers", inputs, "two tower files")->required()->expected(2);
    classify->callback([&] {
        action = [&] {
            const Tower a = io::tower_from_json(load(inputs[0], in));
            const Tower b = io::tower_from_json(load(inputs[1], in));
            json report{{"bce", bijectively_coarsely_equivalent(a, b)},
                        {"ce", coarsely_equivalent(a, b)},
                        {"k0_iso", k0_iso_exists(a, b)},
                        {"obstruction", nullptr}};
            if (auto w = obstruction_witness(a, b)) report["obstruction"] = json::array({prime_json(w->prime), w->exponent});
            out << io::dump(report);
            return ok;
        };
    });

    auto* bce = app.add_subcommand("bce", "bijective coarse equivalences");
    bce->require_subcommand(1);
    auto* build = bce->add_subcommand("build", "back-and-forth construction");
    build->add_option("--depth", depth)->required();
    build->add_option("towers", inputs, "source and target tower files")->required()->expected(2);
    build->add_option("-o,--output", output);
    build->callback([&] {
        action = [&] {
            const Tower a = io::tower_from_json(load(inputs[0], in));
            const Tower b = io::tower_from_json(load(inputs[1], in));
            emit(io::to_json(build_back_and_forth(a, b, depth)), output, out);
            return ok;
        };
    });
    auto* verify = bce->add_subcommand("verify", "check a bijection file");
    verify->add_option("map", inputs, "bijection file")->required()->expected(1);
    verify->callback([&] {
        action = [&] {
            const EquivalenceReport report = verify_bijective_coarse_equivalence(io::bijection_from_json(load(inputs[0], in)));
            out << io::dump(io::to_json(report));
            return report.passed() ? ok : check_failed;
        };
    });

    auto* k0 = app.add_subcommand("k0", "K0 classes");
    k0->require_subcommand(1);
    auto* eq = k0->add_subcommand("eq", "equality in K0");
    eq->add_option("classes", inputs, "two class files")->required()->expected(2);
    eq->callback([&] {
        action = [&] {
            emit_bool(k0_equal(io::k0_class_from_json(load(inputs[0], in)), io::k0_class_from_json(load(inputs[1], in))),
                      out);
            return ok;
        };
    });
    auto* pos = k0->add_subcommand("pos", "positivity in K0");
    pos->add_option("class", inputs, "class file")->required()->expected(1);
    pos->callback([&] {
        action = [&] {
            const auto r = k0_positive(io::k0_class_from_json(load(inputs[0], in)), true);
            json j{{"positive", r.positive}, {"witness_level", nullptr}, {"representative", nullptr}};
            if (r.witness_level) j["witness_level"] = *r.witness_level;
            if (r.representative) j["representative"] = io::to_json(*r.representative);
            out << io::dump(j);
            return ok;
        };
    });
    auto* divide = k0->add_subcommand("divide-unit", "divide the order unit by p^r");
    divide->add_option("--prime", prime)->required();
    divide->add_option("--exp", exponent)->required();
    divide->add_option("tower", inputs, "tower file")->required()->expected(1);
    divide->add_option("-o,--output", output);
    divide->callback([&] {
        action = [&] {
            const auto w = unit_divide(io::tower_from_json(load(inputs[0], in)), parse_big_int(prime), exponent);
            emit(w ? io::to_json(*w) : json(nullptr), output, out);
            return ok;
        };
    });

    auto* embed = app.add_subcommand("embed", "embed a finite metric space into Z>=0");
    embed->add_option("space", inputs, "metric space file")->required()->expected(1);
    embed->add_option("-o,--output", output);
    embed->callback([&] {
        action = [&] {
            emit(json(embed_into_nonneg_integers(io::metric_space_from_json(load(inputs[0], in)))), output, out);
            return ok;
        };
    });

    auto* roe = app.add_subcommand("roe", "finite-propagation operators");
    roe->require_subcommand(1);
    auto* decompose = roe->add_subcommand("decompose", "block-diagonal form at a level");
    decompose->add_option("--level", lvl)->required();
    decompose->add_option("operator", inputs, "operator file")->required()->expected(1);
    decompose->add_option("-o,--output", output);
    decompose->callback([&] {
        action = [&] {
            emit(io::to_json(block_decompose(io::operator_from_json(load(inputs[0], in)), lvl)), output, out);
            return ok;
        };
    });
    auto* trace = roe->add_subcommand("trace", "block trace vector at a level");
    trace->add_option("--level", lvl)->required();
    trace->add_flag("--projection", projection, "require projection blocks");
    trace->add_option("operator", inputs, "operator file")->required()->expected(1);
    trace->callback([&] {
        action = [&] {
            const auto traces = trace_vector(block_decompose(io::operator_from_json(load(inputs[0], in)), lvl), projection);
            json arr = json::array();
            for (const auto& t : traces) arr.push_back(mpz_fits_slong_p(t.get_mpz_t()) ? json(t.get_si()) : json(to_string(t)));
            out << io::dump(arr);
            return ok;
        };
    });
    auto* conjugate = roe->add_subcommand("conjugate", "conjugate an operator by a bijection");
    conjugate->add_option("files", inputs, "bijection file, then operator file")->required()->expected(2);
    conjugate->add_option("-o,--output", output);
    conjugate->callback([&] {
        action = [&] {
            const TowerBijection b = io::bijection_from_json(load(inputs[0], in));
            emit(io::to_json(conjugate_by_bijection(b, io::operator_from_json(load(inputs[1], in)))), output, out);
            return ok;
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "lfroe: " << e.what() << '\n';
        return malformed;
    }

    try {
        return action();
    } catch (const malformed_input& e) {
        err << "lfroe: malformed input: " << e.what() << '\n';
        return malformed;
    } catch (const io::json::exception& e) {
        err << "lfroe: malformed input: " << e.what() << '\n';
        return malformed;
    } catch (const depth_exhausted& e) {
        err << "lfroe: depth exhausted: " << e.what() << '\n';
        return exhausted;
    } catch (const error& e) {
        err << "lfroe: precondition violated: " << e.what() << '\n';
        return precondition;
    }
}

} // namespace lfroe::cli
