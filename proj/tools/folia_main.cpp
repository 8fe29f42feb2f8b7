#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "folia/divisor.hpp"
#include "folia/jetlab.hpp"
#include "folia/moduli.hpp"
#include "folia/parser.hpp"

namespace fs = std::filesystem;
using namespace folia;

namespace {

// exit codes are a stable contract:
//   0 success, 1 parse/schema/usage error, 2 undetermined, 3 depth limit,
//   4 internal tau mismatch, 5 not a generalized curve, 6 jet-lab FAIL rows
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitDepthLimit = 3;
constexpr int kExitTauMismatch = 4;
constexpr int kExitNotGeneralizedCurve = 5;
constexpr int kExitJetlabFail = 6;

std::string read_form_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return line;
    }
    throw std::runtime_error("no expression found in " + p.string());
}

void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

std::string reduction_report(const OneForm& w, const ReductionOutcome& o) {
    std::ostringstream os;
    os << "input: " << print_one_form(w) << "\n";
    os << "status: "
       << (o.status == ReduceStatus::complete       ? "COMPLETE"
           : o.status == ReduceStatus::undetermined ? "UNDETERMINED"
                                                    : "DEPTH_LIMIT")
       << "\n";
    if (!o.note.empty()) os << "note: " << o.note << "\n";
    if (!o.origin_singular) {
        os << "regular point: the form does not vanish at the origin\n";
        return os.str();
    }
    os << "blow-ups: " << o.blow_up_count << "\n";
    os << "generalized curve: " << (o.generalized_curve ? "yes" : "no") << "\n";
    if (o.origin_class && o.blow_up_count == 0)
        os << "origin already reduced: " << to_string(o.origin_class->cls) << "\n";
    if (!o.components.empty()) {
        os << "components:\n";
        for (const auto& c : o.components) {
            os << "  " << c.name << "  self-intersection " << c.self_intersection
               << (c.dicritical ? "  dicritical" : "") << "\n";
        }
        os << "blow-up tree:\n";
        for (const auto& n : o.tree)
            os << "  " << n.component_created + 1 << ": " << (n.center.empty() ? "origin" : n.center)
               << "  ->  E" << n.component_created + 1 << " (nu=" << n.nu
               << (n.dicritical ? ", dicritical" : "") << ")\n";
    }
    if (!o.points.empty()) {
        os << "singular points of the reduced foliation:\n";
        for (const auto& p : o.points) {
            os << "  #" << p.index << " chart " << p.chart << ", on";
            for (int c : p.components) os << " " << o.components[c].name;
            if (!p.is_corner()) os << " at " << p.coordinate.to_string();
            os << ": " << to_string(p.cls.cls);
            if (p.cls.nodal == Tri::yes) os << " (nodal)";
            if (p.cls.nodal == Tri::unknown) os << " (nodal?)";
            for (const auto& cs : p.cs)
                os << "  CS(" << o.components[cs.component].name
                   << ")=" << (cs.determined ? cs.value.to_string() : "undetermined");
            os << "\n";
        }
    }
    if (o.status == ReduceStatus::complete) {
        MarkedDivisor d = make_divisor(o);
        auto im = intersection_matrix(d);
        os << "intersection matrix negative definite: "
           << (is_negative_definite(im) ? "yes" : "no") << "\n";
        auto residuals = verify_camacho_sad(d);
        if (!residuals.empty()) {
            os << "Camacho-Sad residuals (sum of indices minus self-intersection):\n";
            for (const auto& r : residuals)
                os << "  " << d.components[r.component].name << ": "
                   << (r.determined ? r.residual.to_string() : "undetermined") << "\n";
        }
    }
    return os.str();
}

int reduce_status_code(const ReductionOutcome& o) {
    switch (o.status) {
    case ReduceStatus::complete: return kExitOk;
    case ReduceStatus::undetermined: return kExitUndetermined;
    case ReduceStatus::depth_limit: return kExitDepthLimit;
    }
    return kExitOk;
}

struct PipelineArtifacts {
    ReductionOutcome outcome;
    OneForm form;
};

PipelineArtifacts run_reduce(const std::string& text, const fs::path& outdir,
                             const std::string& name, const ReduceConfig& cfg) {
    PipelineArtifacts art;
    art.form = parse_one_form(text);
    art.outcome = reduce(art.form, cfg);
    write_file(outdir / (name + ".report.txt"), reduction_report(art.form, art.outcome));
    if (art.outcome.status == ReduceStatus::complete) {
        MarkedDivisor d = make_divisor(art.outcome);
        write_file(outdir / (name + ".divisor.json"), divisor_to_json(d).dump(2) + "\n");
        write_file(outdir / (name + ".dot"), to_dot(d));
    }
    return art;
}

int run_moduli(const MarkedDivisor& d, const Annotations& ann, const fs::path& outdir,
               const std::string& name) {
    if (!d.generalized_curve) {
        std::cerr << "moduli: the reduced foliation has a saddle-node; the moduli "
                     "pipeline requires a generalized curve\n";
        return kExitNotGeneralizedCurve;
    }
    ModuliSkeleton sk;
    try {
        sk = moduli_skeleton(d, ann);
    } catch (const TauMismatch& e) {
        std::cerr << "moduli: " << e.what() << "\n";
        return kExitTauMismatch;
    }
    write_file(outdir / (name + ".skeleton.json"), skeleton_to_json(sk, d).dump(2) + "\n");
    write_file(outdir / (name + ".skeleton.txt"), skeleton_to_text(sk, d));
    std::cout << skeleton_to_text(sk, d);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction of plane foliation singularities, marked divisors and "
                 "moduli invariants (exact arithmetic)"};
    app.require_subcommand(1);

    std::string form_text, input_file, divisor_file, annotations_file, scenario_file;
    std::string out_dir = ".", name;
    int max_blowups = 64;
    long tower_cap = 8;
    std::string corpus_dir;

    auto* creduce = app.add_subcommand("reduce", "resolve the singularities of a 1-form");
    creduce->add_option("--form", form_text, "inline expression, e.g. \"2*y*dy - 3*x^2*dx\"");
    creduce->add_option("--input", input_file, "file with the expression");
    creduce->add_option("--out", out_dir, "output directory");
    creduce->add_option("--name", name, "artifact base name");
    creduce->add_option("--max-blowups", max_blowups, "blow-up budget");
    creduce->add_option("--tower-cap", tower_cap, "field tower degree cap");

    auto* cmoduli = app.add_subcommand("moduli", "moduli skeleton of a reduced foliation");
    cmoduli->add_option("--divisor", divisor_file, "divisor JSON produced by reduce");
    cmoduli->add_option("--form", form_text, "inline expression (reduces first)");
    cmoduli->add_option("--input", input_file, "file with the expression");
    cmoduli->add_option("--annotations", annotations_file, "dimension/TR annotation JSON");
    cmoduli->add_option("--out", out_dir, "output directory");
    cmoduli->add_option("--name", name, "artifact base name");
    cmoduli->add_option("--max-blowups", max_blowups, "blow-up budget");
    cmoduli->add_option("--tower-cap", tower_cap, "field tower degree cap");

    auto* cjetlab = app.add_subcommand("jetlab", "verify gluing/derivative scenarios");
    cjetlab->add_option("--scenario", scenario_file, "scenario JSON")->required();
    cjetlab->add_option("--out", out_dir, "output directory");
    cjetlab->add_option("--name", name, "artifact base name");

    auto* ccorpus = app.add_subcommand("corpus", "run the full pipeline on a directory of forms");
    ccorpus->add_option("--dir", corpus_dir, "directory with .form files")->required();
    ccorpus->add_option("--out", out_dir, "output directory")->required();
    ccorpus->add_option("--max-blowups", max_blowups, "blow-up budget");
    ccorpus->add_option("--tower-cap", tower_cap, "field tower degree cap");

    CLI11_PARSE(app, argc, argv);

    ReduceConfig cfg;
    cfg.max_blow_ups = max_blowups;
    cfg.tower_degree_cap = tower_cap;

    try {
        if (creduce->parsed()) {
            if (form_text.empty() && input_file.empty()) {
                std::cerr << "reduce: need --form or --input\n";
                return kExitParse;
            }
            if (!input_file.empty()) form_text = read_form_file(input_file);
            if (name.empty())
                name = input_file.empty() ? "form" : fs::path(input_file).stem().string();
            auto art = run_reduce(form_text, out_dir, name, cfg);
            std::cout << reduction_report(art.form, art.outcome);
            return reduce_status_code(art.outcome);
        }

        if (cmoduli->parsed()) {
            Annotations ann;
            if (!annotations_file.empty()) {
                std::ifstream in(annotations_file);
                if (!in) {
                    std::cerr << "moduli: cannot open " << annotations_file << "\n";
                    return kExitParse;
                }
                ann = annotations_from_json(Json::parse(in));
            }
            MarkedDivisor d;
            if (!divisor_file.empty()) {
                std::ifstream in(divisor_file);
                if (!in) {
                    std::cerr << "moduli: cannot open " << divisor_file << "\n";
                    return kExitParse;
                }
                d = divisor_from_json(Json::parse(in));
                if (name.empty()) name = fs::path(divisor_file).stem().string();
            } else {
                if (form_text.empty() && input_file.empty()) {
                    std::cerr << "moduli: need --divisor, --form or --input\n";
                    return kExitParse;
                }
                if (!input_file.empty()) form_text = read_form_file(input_file);
                if (name.empty())
                    name = input_file.empty() ? "form" : fs::path(input_file).stem().string();
                auto art = run_reduce(form_text, out_dir, name, cfg);
                int rc = reduce_status_code(art.outcome);
                if (rc != kExitOk) {
                    std::cerr << "moduli: reduction did not complete\n";
                    return rc;
                }
                d = make_divisor(art.outcome);
            }
            return run_moduli(d, ann, out_dir, name);
        }

        if (cjetlab->parsed()) {
            std::ifstream in(scenario_file);
            if (!in) {
                std::cerr << "jetlab: cannot open " << scenario_file << "\n";
                return kExitParse;
            }
            ScenarioResult res = run_scenario(Json::parse(in));
            std::cout << res.table;
            if (name.empty()) name = fs::path(scenario_file).stem().string();
            write_file(fs::path(out_dir) / (name + ".verdicts.txt"), res.table);
            return res.all_match ? kExitOk : kExitJetlabFail;
        }

        if (ccorpus->parsed()) {
            std::vector<fs::path> inputs;
            for (const auto& entry : fs::directory_iterator(corpus_dir))
                if (entry.path().extension() == ".form") inputs.push_back(entry.path());
            std::sort(inputs.begin(), inputs.end());
            if (inputs.empty()) {
                std::cerr << "corpus: no .form files in " << corpus_dir << "\n";
                return kExitParse;
            }
            std::ostringstream summary;
            for (const auto& p : inputs) {
                std::string nm = p.stem().string();
                std::string text = read_form_file(p);
                auto art = run_reduce(text, out_dir, nm, cfg);
                summary << nm << ": ";
                switch (art.outcome.status) {
                case ReduceStatus::complete: {
                    summary << "COMPLETE, " << art.outcome.blow_up_count << " blow-ups, "
                            << (art.outcome.generalized_curve ? "generalized curve"
                                                              : "saddle-node present");
                    if (art.outcome.generalized_curve) {
                        MarkedDivisor d = make_divisor(art.outcome);
                        ModuliSkeleton sk = moduli_skeleton(d);
                        write_file(fs::path(out_dir) / (nm + ".skeleton.json"),
                                   skeleton_to_json(sk, d).dump(2) + "\n");
                        write_file(fs::path(out_dir) / (nm + ".skeleton.txt"),
                                   skeleton_to_text(sk, d));
                        summary << ", tau=" << sk.tau;
                    }
                    break;
                }
                case ReduceStatus::undetermined: summary << "UNDETERMINED"; break;
                case ReduceStatus::depth_limit: summary << "DEPTH_LIMIT"; break;
                }
                summary << "\n";
            }
            write_file(fs::path(out_dir) / "summary.txt", summary.str());
            std::cout << summary.str();
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Undetermined& e) {
        std::cerr << "undetermined: " << e.what() << "\n";
        return kExitUndetermined;
    } catch (const Json::exception& e) {
        std::cerr << "JSON error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
