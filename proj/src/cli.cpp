/*
 * Copyright 2026 the alcforget authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "alcf/cli.hpp"

#include "alcf/builders.hpp"
#include "alcf/compute.hpp"
#include "alcf/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace alcf {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, 0, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(0, 0, "cannot write " + path);
    out << text;
}

struct Verdict {
    std::string answer;                  // yes | no | unknown
    bool bounded = false;
    unsigned m = 0;
    std::string certificate;             // optional path

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["answer"] = answer;
        if (bounded) j["strength"] = {{"kind", "bounded"}, {"m", m}};
        else j["strength"] = {{"kind", "exact"}};
        if (!certificate.empty()) j["certificate"] = certificate;
        return j;
    }
};

int finish(const Verdict& v, bool json, std::ostream& out, const std::string& text_line) {
    if (json) out << v.to_json().dump(2) << "\n";
    else out << text_line << "\n";
    if (v.answer == "yes") return 0;
    return 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"uniform interpolation and conservative extensions for ALC TBoxes"};
    app.require_subcommand(1);

    bool json = false;
    unsigned max_counter_bits = 12;
    uint64_t max_family = 1000000;
    app.add_flag("--json", json, "emit the verdict as JSON");
    app.add_option("--max-counter-bits", max_counter_bits, "cap on depth counter width");
    app.add_option("--max-family", max_family, "cap on canonical family size");

    std::string tbox_path, tbox2_path, int1_path, int2_path, concept_text, stmt_text;
    std::string sigma_text, cert_prefix, out_path;
    unsigned depth = 0;
    bool have_depth = false;
    unsigned lb_n = 1;
    bool lb_stats = false;

    auto add_depth = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--depth", depth, "role depth bound");
        if (required) o->required();
        o->each([&](const std::string&) { have_depth = true; });
    };

    CLI::App* sat = app.add_subcommand("sat", "concept satisfiability w.r.t. a TBox");
    sat->add_option("tbox", tbox_path)->required();
    sat->add_option("concept", concept_text)->required();

    CLI::App* ent = app.add_subcommand("entails", "TBox entailment of one inclusion");
    ent->add_option("tbox", tbox_path)->required();
    ent->add_option("inclusion", stmt_text)->required();

    CLI::App* types_cmd = app.add_subcommand("types", "print the realized types");
    types_cmd->add_option("tbox", tbox_path)->required();

    CLI::App* bisim = app.add_subcommand("bisim", "bisimilarity of two pointed interpretations");
    bisim->add_option("int1", int1_path)->required();
    bisim->add_option("int2", int2_path)->required();
    bisim->add_option("--sigma", sigma_text, "signature, comma separated")->required();
    add_depth(bisim, false);

    CLI::App* holds = app.add_subcommand("holds-eq", "bisimulation quantifier at the point");
    holds->add_option("tbox", tbox_path)->required();
    holds->add_option("interp", int1_path)->required();
    holds->add_option("--sigma", sigma_text)->required();

    CLI::App* ce = app.add_subcommand("ce", "is tbox1 + tbox2 conservative over tbox1");
    ce->add_option("tbox1", tbox_path)->required();
    ce->add_option("tbox2", tbox2_path)->required();

    CLI::App* uie = app.add_subcommand("ui-exists",
                                       "does the depth-m approximant fail (two-witness condition)");
    uie->add_option("tbox", tbox_path)->required();
    uie->add_option("--sigma", sigma_text)->required();
    add_depth(uie, true);
    uie->add_option("--cert", cert_prefix, "write the witness pair to PREFIX.i1/.i2.json");

    CLI::App* uic = app.add_subcommand("ui-compute", "compute a uniform interpolant");
    uic->add_option("tbox", tbox_path)->required();
    uic->add_option("--sigma", sigma_text)->required();
    add_depth(uic, false);
    uic->add_option("--out", out_path, "write the TBox here instead of stdout");

    CLI::App* approx = app.add_subcommand("approximate", "depth-m approximant TBox");
    approx->add_option("tbox", tbox_path)->required();
    approx->add_option("--sigma", sigma_text)->required();
    add_depth(approx, true);
    approx->add_option("--out", out_path, "write the TBox here instead of stdout");

    CLI::App* vw = app.add_subcommand("verify-witness", "check a two-witness pair");
    vw->add_option("tbox", tbox_path)->required();
    vw->add_option("--sigma", sigma_text)->required();
    add_depth(vw, true);
    vw->add_option("int1", int1_path)->required();
    vw->add_option("int2", int2_path)->required();

    CLI::App* lb = app.add_subcommand("lower-bound", "generate the lower-bound TBox family");
    lb->add_option("n", lb_n)->required();
    lb->add_flag("--stats", lb_stats, "print expanded concept sizes");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    ComputeLimits climits{max_family};
    BuilderLimits blimits{max_counter_bits};

    try {
        if (*sat) {
            TBox t = parse_tbox(read_file(tbox_path));
            ConceptId c = parse_concept(concept_text);
            bool yes = satisfiable(c, t);
            return finish(Verdict{yes ? "yes" : "no", false, 0, ""}, json, out,
                          yes ? "satisfiable" : "unsatisfiable");
        }
        if (*ent) {
            TBox t = parse_tbox(read_file(tbox_path));
            Inclusion inc = parse_inclusion(stmt_text);
            bool yes = entails(t, inc);
            return finish(Verdict{yes ? "yes" : "no", false, 0, ""}, json, out,
                          yes ? "entailed" : "not entailed");
        }
        if (*types_cmd) {
            TBox t = parse_tbox(read_file(tbox_path));
            out << render_types(compute_types(t, {}));
            return 0;
        }
        if (*bisim) {
            PointedInterpretation p1 = load_pointed(read_file(int1_path));
            PointedInterpretation p2 = load_pointed(read_file(int2_path));
            Signature s = parse_signature(sigma_text);
            bool yes = have_depth ? m_bisimilar(p1, p2, s, depth) : sigma_bisimilar(p1, p2, s);
            Verdict v{yes ? "yes" : "no", have_depth, depth, ""};
            return finish(v, json, out, yes ? "bisimilar" : "not bisimilar");
        }
        if (*holds) {
            TBox t = parse_tbox(read_file(tbox_path));
            PointedInterpretation p = load_pointed(read_file(int1_path));
            Signature s = parse_signature(sigma_text);
            bool yes = holds_bisim_quantifier(p, t, s);
            return finish(Verdict{yes ? "yes" : "no", false, 0, ""}, json, out,
                          yes ? "holds" : "does not hold");
        }
        if (*ce) {
            TBox t = parse_tbox(read_file(tbox_path));
            TBox t2 = parse_tbox(read_file(tbox2_path));
            bool yes = decide_conservative_extension(t, t2);
            return finish(Verdict{yes ? "yes" : "no", false, 0, ""}, json, out,
                          yes ? "conservative extension" : "not a conservative extension");
        }
        if (*uie) {
            TBox t = parse_tbox(read_file(tbox_path));
            Signature s = parse_signature(sigma_text);
            UiExistsResult r = decide_interpolant_nonexistence_at(t, s, depth, blimits);
            Verdict v;
            v.bounded = !r.at_threshold;
            v.m = depth;
            if (r.star_holds) {
                v.answer = "yes";
                if (!cert_prefix.empty() && r.witness) {
                    write_file(cert_prefix + ".i1.json", save_pointed(r.witness->i1));
                    write_file(cert_prefix + ".i2.json", save_pointed(r.witness->i2));
                    v.certificate = cert_prefix;
                }
            } else {
                v.answer = r.at_threshold ? "no" : "unknown";
            }
            std::string line = r.star_holds
                                   ? "approximant at depth " + std::to_string(depth) +
                                         " is not an interpolant (witness pair found)"
                                   : (r.at_threshold ? "a uniform interpolant exists"
                                                     : "no witness at this depth (inconclusive)");
            return finish(v, json, out, line);
        }
        if (*uic) {
            TBox t = parse_tbox(read_file(tbox_path));
            Signature s = parse_signature(sigma_text);
            TBox res = tbox_interpolant(t, s,
                                        have_depth ? std::optional<unsigned>(depth)
                                                   : std::nullopt,
                                        climits);
            std::string text = render(res);
            if (!out_path.empty()) write_file(out_path, text);
            else out << text;
            if (json) {
                Verdict v{"yes", have_depth, depth, out_path};
                out << v.to_json().dump(2) << "\n";
            }
            return 0;
        }
        if (*approx) {
            TBox t = parse_tbox(read_file(tbox_path));
            Signature s = parse_signature(sigma_text);
            TBox res = approximant(t, s, depth, climits);
            std::string text = render(res);
            if (!out_path.empty()) write_file(out_path, text);
            else out << text;
            if (json) {
                Verdict v{"yes", true, depth, out_path};
                out << v.to_json().dump(2) << "\n";
            }
            return 0;
        }
        if (*vw) {
            TBox t = parse_tbox(read_file(tbox_path));
            Signature s = parse_signature(sigma_text);
            WitnessPair w;
            w.i1 = load_pointed(read_file(int1_path));
            w.i2 = load_pointed(read_file(int2_path));
            w.depth = depth;
            bool yes = verify_witness(w, t, s);
            Verdict v{yes ? "yes" : "no", true, depth, ""};
            return finish(v, json, out, yes ? "witness verified" : "witness rejected");
        }
        if (*lb) {
            auto [t_minus, t_sigma] = lower_bound_family(lb_n, climits);
            out << "# base TBox\n" << render(t_minus);
            out << "# extended TBox\n" << render(t_sigma);
            if (lb_stats) {
                uint64_t m = (uint64_t{1} << lb_n) * (uint64_t{1} << (uint64_t{1} << lb_n));
                out << "# K2 chain length m = " << m << "\n";
                for (unsigned i = 0; i <= m; ++i)
                    out << "# K2(" << i << ") nodes: " << k2_size(i) << "\n";
                uint64_t total = 0;
                for (const auto& inc : t_sigma.inclusions)
                    total += concept_size(inc.lhs) + concept_size(inc.rhs) + 1;
                out << "# extended TBox nodes: " << total << "\n";
            }
            return 0;
        }
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const NotWellCounting& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const NotStratified& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const UnsupportedPriorities& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace alcf
