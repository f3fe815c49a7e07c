#include <CLI11.hpp>
#include <json.hpp>

#include "cedga/io.hpp"
#include "cedga/registry.hpp"
#include "cedga/resolution.hpp"
#include "cedga/rhom.hpp"
#include "cedga/surgery.hpp"
#include "cedga/transforms.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

using namespace cedga;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;

Dga input_dga(const std::string& ref)
{
    if (std::filesystem::exists(ref))
        return load_dga(ref);
    if (is_registry_name(ref))
        return registry_example(ref);
    throw error("no such file or registry example: " + ref);
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty())
        std::cout << text;
    else {
        std::ofstream out(out_path);
        if (!out)
            throw error("cannot write " + out_path);
        out << text;
    }
}

CopyMap parse_copies(const Dga& base, const std::string& copies, const std::string& potentials,
                     int uniform_k)
{
    CopyMap cm;
    if (!copies.empty()) {
        std::stringstream ss(copies);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw error("--copies wants s=k pairs, got " + item);
            cm.counts[item.substr(0, eq)] = static_cast<uint32_t>(std::stoul(item.substr(eq + 1)));
        }
        for (const auto& s : base.ring.labels)
            if (!cm.counts.count(s))
                throw error("--copies is missing idempotent " + s);
    } else {
        cm = CopyMap::uniform(base, static_cast<uint32_t>(uniform_k));
    }
    if (!potentials.empty()) {
        std::stringstream ss(potentials);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw error("--potentials wants s=p1:p2 pairs, got " + item);
            std::string label = item.substr(0, eq);
            std::vector<int64_t> pots;
            std::stringstream ps(item.substr(eq + 1));
            std::string p;
            while (std::getline(ps, p, ':'))
                pots.push_back(std::stoll(p));
            if (pots.size() != cm.count(label))
                throw error("--potentials for " + label + " wants " +
                            std::to_string(cm.count(label)) + " values");
            cm.potentials[label] = pots;
        }
    }
    return cm;
}

json betti_json(const PoincarePolynomial& p)
{
    json j = json::array();
    for (const auto& [k, r] : p.rank)
        j.push_back(json{{"degree", k}, {"rank", r}});
    return j;
}

json validation_json(const ValidationReport& rep)
{
    json j = json::array();
    for (const auto& issue : rep.issues)
        j.push_back(json{{"generator", issue.generator}, {"message", issue.message}});
    return j;
}

struct AugPick {
    Dga omitted;
    std::vector<Augmentation> augs;
};

AugPick enumerate_cap_augs(const CapSpec& spec, uint32_t max_bits)
{
    AugPick p;
    p.omitted = omit_idempotents(build_cap_algebra(spec));
    p.augs = find_augmentations(p.omitted, max_bits);
    return p;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Chekanov-Eliashberg DGA engine: semi-projective DGAs over idempotent rings,\n"
                 "cap algebras, Cthulhu bimodules and finite-dimensional RHom over F2"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    unsigned jobs = 1;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--jobs", jobs, "worker threads for the engine (default 1)");

    std::string in, out, copies, potentials, pair, v0_path, v1_path;
    std::string cap0_path, cap1_path;
    int k0 = 1, k1 = 1, aug0 = 0, aug1 = 0, dim_l = 2, max_len = 4, max_bits = 24;
    bool ungraded = false;
    std::string action_q = "0";

    auto* c_check = app.add_subcommand("check", "validate a DGA (composability, degrees, actions, d^2)");
    c_check->add_option("dga", in)->required();

    auto* c_hom = app.add_subcommand("homology", "Betti table of a chain complex file");
    c_hom->add_option("complex", in)->required();

    auto* c_morsify = app.add_subcommand("morsify", "adjoin e-units with de = e^2");
    c_morsify->add_option("dga", in)->required();
    c_morsify->add_option("--out", out);

    auto* c_omit = app.add_subcommand("omit", "omit the idempotents (slashed algebra)");
    c_omit->add_option("dga", in)->required();
    c_omit->add_option("--out", out);

    auto* c_expand = app.add_subcommand("expand", "expand idempotents into ordered copies");
    c_expand->add_option("dga", in)->required();
    c_expand->add_option("--copies", copies, "s=k,... (default: --k everywhere)");
    c_expand->add_option("--k", k0, "uniform copy count");
    c_expand->add_option("--potentials", potentials, "s=p1:p2,...");
    c_expand->add_option("--out", out);

    auto* c_quot = app.add_subcommand("quotient", "kill the e-copies with i >= j");
    c_quot->add_option("dga", in)->required();
    c_quot->add_option("--out", out);

    auto* c_elim = app.add_subcommand("eliminate", "eliminate a pair in elimination position");
    c_elim->add_option("dga", in)->required();
    c_elim->add_option("--pair", pair, "a,b with da = b, db = 0")->required();
    c_elim->add_option("--out", out);

    auto* c_elimcm = app.add_subcommand("eliminate-cm", "eliminate the c/m tower of a model cap");
    c_elimcm->add_option("dga", in)->required();
    c_elimcm->add_option("--out", out);

    auto* c_trunc = app.add_subcommand("truncate", "action truncation A^Q (keep action <= Q)");
    c_trunc->add_option("dga", in)->required();
    c_trunc->add_option("--action", action_q, "rational bound Q")->required();
    c_trunc->add_option("--out", out);

    auto* c_cap = app.add_subcommand("cap", "the arrow algebra vec-A+ of parallel copies");
    c_cap->add_option("dga", in)->required();
    c_cap->add_option("--copies", copies);
    c_cap->add_option("--k", k0, "uniform copy count");
    c_cap->add_option("--potentials", potentials);
    c_cap->add_option("--out", out);

    auto* c_model = app.add_subcommand("model-cap", "the model cap algebra with c/m generators");
    c_model->add_option("dga", in)->required();
    c_model->add_option("--copies", copies);
    c_model->add_option("--k", k0, "uniform copy count");
    c_model->add_option("--potentials", potentials);
    c_model->add_option("--dim", dim_l, "ambient dimension entering the c/m degrees (default 2)");
    c_model->add_option("--out", out);

    auto* c_cth = app.add_subcommand("cthulhu", "the Cthulhu bimodule between two caps");
    c_cth->add_option("dga", in, "base DGA (with --k0/--k1)");
    c_cth->add_option("--cap0", cap0_path, "cap spec file for the right side");
    c_cth->add_option("--cap1", cap1_path, "cap spec file for the left side");
    c_cth->add_option("--k0", k0);
    c_cth->add_option("--k1", k1);

    auto* c_augs = app.add_subcommand("augs", "enumerate augmentations");
    c_augs->add_option("dga", in)->required();
    c_augs->add_option("--max-bits", max_bits, "search budget (degree-0 generators)");
    c_augs->add_flag("--ungraded", ungraded, "allow support outside degree 0");

    auto* c_rhom = app.add_subcommand("rhom", "RHom(V0, V1) through the short resolution");
    c_rhom->add_option("dga", in)->required();
    c_rhom->add_option("--v0", v0_path)->required();
    c_rhom->add_option("--v1", v1_path)->required();
    c_rhom->add_option("--out", out, "also write the complex to a file");

    std::string emit_v0, emit_v1;
    auto* c_pipe = app.add_subcommand("pipeline", "Cthulhu Betti vs RHom Betti, up to a global shift");
    c_pipe->add_option("--base", in)->required();
    c_pipe->add_option("--k0", k0);
    c_pipe->add_option("--k1", k1);
    c_pipe->add_option("--aug0", aug0, "augmentation index on the cap0 side");
    c_pipe->add_option("--aug1", aug1, "augmentation index on the cap1 side");
    c_pipe->add_option("--potentials", potentials, "shared potentials s=p1:p2,...");
    c_pipe->add_option("--emit-v0", emit_v0, "write the induced module V0 to a file");
    c_pipe->add_option("--emit-v1", emit_v1, "write the induced module V1 to a file");

    auto* c_exact = app.add_subcommand("exactness", "word-length-graded exactness of the short sequence");
    c_exact->add_option("dga", in)->required();
    c_exact->add_option("--max-len", max_len);

    auto* c_ex = app.add_subcommand("examples", "list or emit the built-in examples");
    std::string ex_verb, ex_name;
    c_ex->add_option("verb", ex_verb, "list | emit")->required();
    c_ex->add_option("name", ex_name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*c_check) {
            Dga d = input_dga(in);
            ValidationReport rep = check_dga(d, jobs);
            if (as_json)
                std::cout << json{{"ok", rep.ok()}, {"issues", validation_json(rep)}}.dump(2)
                          << "\n";
            else
                std::cout << (rep.ok() ? "ok: all checks pass" : rep.summary()) << "\n";
            return rep.ok() ? kExitOk : kExitMath;
        }
        if (*c_hom) {
            ChainComplex c = load_complex(in);
            PoincarePolynomial p = betti(c);
            if (as_json)
                std::cout << json{{"betti", betti_json(p)}}.dump(2) << "\n";
            else
                std::cout << "H* = " << p.to_string() << "\n";
            return kExitOk;
        }
        auto transform_out = [&](const Dga& result) {
            emit(serialize_dga(result), out);
            return kExitOk;
        };
        if (*c_morsify)
            return transform_out(morsify(input_dga(in)));
        if (*c_omit)
            return transform_out(omit_idempotents(input_dga(in)));
        if (*c_expand) {
            Dga d = input_dga(in);
            auto [c, t] = expand_idempotents(d, parse_copies(d, copies, potentials, k0));
            return transform_out(c);
        }
        if (*c_quot)
            return transform_out(ordered_quotient(input_dga(in)));
        if (*c_elim) {
            auto comma = pair.find(',');
            if (comma == std::string::npos)
                throw error("--pair wants a,b");
            return transform_out(
                eliminate_pair(input_dga(in), pair.substr(0, comma), pair.substr(comma + 1)));
        }
        if (*c_elimcm)
            return transform_out(eliminate_cm_tower(input_dga(in)));
        if (*c_trunc)
            return transform_out(truncate_by_action(input_dga(in), parse_rational(action_q)));
        if (*c_cap) {
            Dga d = input_dga(in);
            CapSpec spec{d, parse_copies(d, copies, potentials, k0)};
            return transform_out(build_cap_algebra(spec));
        }
        if (*c_model) {
            Dga d = input_dga(in);
            CapSpec spec{d, parse_copies(d, copies, potentials, k0)};
            return transform_out(build_model_cap(spec, dim_l));
        }
        if (*c_cth) {
            CapSpec s0, s1;
            if (!cap0_path.empty() && !cap1_path.empty()) {
                s0 = load_capspec(cap0_path);
                s1 = load_capspec(cap1_path);
            } else {
                if (in.empty())
                    throw error("cthulhu wants either --cap0/--cap1 files or a base DGA with --k0/--k1");
                Dga d = input_dga(in);
                s0 = CapSpec{d, CopyMap::uniform(d, static_cast<uint32_t>(k0))};
                s1 = CapSpec{d, CopyMap::uniform(d, static_cast<uint32_t>(k1))};
            }
            CthulhuBimodule b = build_cthulhu_bimodule(s1, s0);
            if (as_json) {
                json gens = json::array();
                for (uint32_t g = 0; g < b.gen_count(); ++g) {
                    json terms = json::array();
                    for (const CthWord& t : b.differential[g].terms)
                        terms.push_back(json{{"left", word_to_string(t.left, b.cap1)},
                                             {"hat", b.generators[t.hat].name},
                                             {"right", word_to_string(t.right, b.cap0)}});
                    gens.push_back(json{{"name", b.generators[g].name},
                                        {"degree", b.generators[g].degree},
                                        {"d", terms}});
                }
                std::cout << json{{"generators", gens}, {"d_squared_zero", b.d_squared_ok}}.dump(2)
                          << "\n";
            } else {
                for (uint32_t g = 0; g < b.gen_count(); ++g) {
                    std::cout << b.generators[g].name << "  deg " << b.generators[g].degree
                              << "  d = ";
                    if (b.differential[g].is_zero())
                        std::cout << "0";
                    for (size_t t = 0; t < b.differential[g].terms.size(); ++t) {
                        const CthWord& w = b.differential[g].terms[t];
                        if (t)
                            std::cout << " + ";
                        std::cout << word_to_string(w.left, b.cap1) << "|"
                                  << b.generators[w.hat].name << "|"
                                  << word_to_string(w.right, b.cap0);
                    }
                    std::cout << "\n";
                }
                std::cout << "d^2 = 0: " << (b.d_squared_ok ? "yes" : "NO") << "\n";
            }
            return b.d_squared_ok ? kExitOk : kExitMath;
        }
        if (*c_augs) {
            Dga d = input_dga(in);
            auto augs = find_augmentations(d, static_cast<uint32_t>(max_bits), ungraded, jobs);
            if (as_json) {
                json arr = json::array();
                for (const auto& eps : augs)
                    arr.push_back(json::parse(serialize_augmentation(d, eps)));
                std::cout << json{{"count", augs.size()}, {"augmentations", arr}}.dump(2) << "\n";
            } else {
                std::cout << augs.size() << " augmentation(s)\n";
                for (size_t i = 0; i < augs.size(); ++i) {
                    std::cout << "#" << i << ":";
                    for (uint32_t g = 0; g < d.gen_count(); ++g) {
                        uint8_t bit = augs[i].form == Augmentation::Form::Scalar
                                          ? augs[i].scalar[g]
                                          : (augs[i].ke[g].is_zero() ? 0 : 1);
                        if (bit)
                            std::cout << " " << d.gen(g).name;
                    }
                    std::cout << (augs[i].form == Augmentation::Form::Scalar ? " (scalar)" : " (k^e)")
                              << "\n";
                }
            }
            return kExitOk;
        }
        if (*c_rhom) {
            Dga d = input_dga(in);
            DgModule v0 = load_module(v0_path, d);
            DgModule v1 = load_module(v1_path, d);
            ChainComplex c = rhom_complex(d, v0, v1);
            PoincarePolynomial p = betti(c);
            if (!out.empty())
                emit(serialize_complex(c), out);
            if (as_json)
                std::cout << json{{"dim", c.dim()}, {"betti", betti_json(p)}}.dump(2) << "\n";
            else
                std::cout << "dim " << c.dim() << "\nH*RHom = " << p.to_string() << "\n";
            return kExitOk;
        }
        if (*c_pipe) {
            Dga d = input_dga(in);
            CapSpec s0{d, parse_copies(d, "", potentials, k0)};
            CapSpec s1{d, parse_copies(d, "", potentials, k1)};
            AugPick p0 = enumerate_cap_augs(s0, static_cast<uint32_t>(max_bits));
            AugPick p1 = enumerate_cap_augs(s1, static_cast<uint32_t>(max_bits));
            if (aug0 < 0 || static_cast<size_t>(aug0) >= p0.augs.size())
                throw error("aug0 out of range: cap0 has " + std::to_string(p0.augs.size()) +
                            " augmentation(s)");
            if (aug1 < 0 || static_cast<size_t>(aug1) >= p1.augs.size())
                throw error("aug1 out of range: cap1 has " + std::to_string(p1.augs.size()) +
                            " augmentation(s)");
            if (!emit_v0.empty())
                emit(serialize_module(module_from_cap_augmentation(d, s0, p0.augs[aug0])), emit_v0);
            if (!emit_v1.empty())
                emit(serialize_module(module_from_cap_augmentation(d, s1, p1.augs[aug1])), emit_v1);
            PipelineReport rep = pipeline_compare(d, s0, s1, p0.augs[aug0], p1.augs[aug1]);
            if (as_json)
                std::cout << json{{"cthulhu", betti_json(rep.cthulhu)},
                                  {"rhom", betti_json(rep.rhom)},
                                  {"shift", rep.shift},
                                  {"pass", rep.pass}}
                                 .dump(2)
                          << "\n";
            else
                std::cout << rep.to_string() << "\n";
            return rep.pass ? kExitOk : kExitMath;
        }
        if (*c_exact) {
            Dga d = input_dga(in);
            ExactnessReport rep;
            if (jobs > 1) {
                // lengths are independent; farm them out and merge
                std::vector<std::future<ExactnessLengthRow>> futs;
                for (int n = 0; n <= max_len; ++n)
                    futs.push_back(std::async(std::launch::async, [&, n] {
                        return exactness_at_length(d, static_cast<uint32_t>(n));
                    }));
                rep.pass = true;
                for (auto& f : futs) {
                    rep.rows.push_back(f.get());
                    rep.pass = rep.pass && rep.rows.back().exact;
                }
            } else {
                rep = length_graded_exactness(d, static_cast<uint32_t>(max_len));
            }
            if (as_json) {
                json rows = json::array();
                for (const auto& r : rep.rows)
                    rows.push_back(json{{"length", r.length},
                                        {"dim_hat", r.dim_hat},
                                        {"dim_mid", r.dim_mid},
                                        {"dim_alg", r.dim_alg},
                                        {"rank_iota", r.rank_iota},
                                        {"rank_mu", r.rank_mu},
                                        {"exact", r.exact}});
                std::cout << json{{"rows", rows}, {"pass", rep.pass}}.dump(2) << "\n";
            } else {
                std::cout << rep.to_string() << "\n";
            }
            return rep.pass ? kExitOk : kExitMath;
        }
        if (*c_ex) {
            if (ex_verb == "list") {
                for (const auto& n : registry_names())
                    std::cout << n << "\n";
                return kExitOk;
            }
            if (ex_verb == "emit") {
                if (ex_name.empty())
                    throw error("examples emit wants a name");
                std::cout << serialize_dga(registry_example(ex_name));
                return kExitOk;
            }
            throw error("examples wants list or emit");
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
