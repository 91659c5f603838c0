#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "reslie/io.hpp"

using namespace reslie;
using nlohmann::json;

namespace {

enum Exit { Pass = 0, Fail = 1, Usage = 2 };

unsigned max_p() {
    const char* env = std::getenv("RESLIE_MAX_P");
    if (!env) return 7;
    try {
        return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
        return 7;
    }
}

std::string superscript(std::size_t q) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s;
    for (char c : std::to_string(q)) s += digits[c - '0'];
    return s;
}

json ints(const FpVector& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json rows(const FpMatrix& A) {
    json r = json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) r.push_back(ints(A.row(i)));
    return r;
}

std::string element(const FpVector& v, const std::vector<std::string>& labels) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        if (!s.empty()) s += " + ";
        if (v[i] != 1) s += std::to_string(v[i]) + "*";
        s += labels[i];
    }
    return s.empty() ? "0" : s;
}

std::vector<std::string> generic_labels(std::size_t m) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < m; ++i) l.push_back("m" + std::to_string(i));
    return l;
}

std::string render_cochain(const CeCochain& c, const std::vector<std::string>& src, const std::vector<std::string>& dst) {
    std::string s;
    const TupleIndex& T = c.tuples();
    for (std::size_t t = 0; t < T.size(); ++t) {
        FpVector v = c.value(t);
        if (v.is_zero()) continue;
        if (!s.empty()) s += ", ";
        std::string args;
        for (std::size_t k : T.tuple(t)) args += (args.empty() ? "" : ",") + src[k];
        s += "(" + args + ") -> " + element(v, dst);
    }
    return s.empty() ? "0" : s;
}

std::string render_rc2(const RC2& c, const std::vector<std::string>& src, const std::vector<std::string>& dst) {
    std::string s = render_cochain(c.phi, src, dst);
    std::string w;
    for (std::size_t i = 0; i < c.omega.size(); ++i)
        if (!c.omega[i].is_zero()) w += (w.empty() ? "" : ", ") + src[i] + " -> " + element(c.omega[i], dst);
    return "phi: " + s + "; omega: " + (w.empty() ? "0" : w);
}

void print_error(const Error& e) { std::cerr << "error [" << error_code_name(e.code) << "]: " << e.message << "\n"; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string describe_pmap_failure(const PMapReport& r, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "p-map axiom " << r.axiom << " fails";
    if (r.x) os << " on (" << element(*r.x, labels) << (r.y ? ", " + element(*r.y, labels) : std::string()) << ")";
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    return os.str();
}

json verify_algebra(const PMap& P) {
    json out;
    const auto& labels = P.algebra.labels();
    auto jr = jacobi_check(P.algebra);
    out["jacobi"] = jr.ok;
    if (!jr.ok) {
        out["witness"] = "Jacobi fails on (" + labels[jr.i] + ", " + labels[jr.j] + ", " + labels[jr.k] + ")";
        out["pass"] = false;
        return out;
    }
    auto pr = verify_pmap(P);
    out["pmap"] = pr.ok;
    if (!pr.ok) out["witness"] = describe_pmap_failure(pr, labels);
    out["pass"] = pr.ok;
    return out;
}

json verify_morphism(const Morphism& phi) {
    json out;
    auto r = check_morphism(phi);
    out["lie"] = r.lie_ok;
    out["restricted"] = r.restricted_ok;
    out["pass"] = r.ok();
    if (!r.ok()) {
        std::string w = r.detail;
        if (r.witness) w += " at " + element(*r.witness, phi.source.algebra.labels());
        out["witness"] = w;
    }
    return out;
}

int report(const json& j, bool as_json, const std::string& name) {
    if (as_json) {
        emit(j);
    } else {
        std::cout << name << ": " << (j.at("pass").get<bool>() ? "pass" : "FAIL") << "\n";
        if (j.contains("witness")) std::cout << "  witness: " << j.at("witness").get<std::string>() << "\n";
    }
    return j.at("pass").get<bool>() ? Pass : Fail;
}

int cmd_verify(const std::string& file, bool as_json) {
    auto doc = load_algebra_document(file);
    if (!doc) {
        print_error(doc.error());
        return Fail;
    }
    json j = verify_algebra(doc->algebra);
    if (j["pass"] && doc->module) {
        auto rm = make_restricted_module(doc->algebra, *doc->module);
        auto mc = module_check(*doc->module);
        j["module"] = mc.ok && rm.has_value();
        if (!mc.ok) j["witness"] = "module action is not a representation";
        else if (!rm) j["witness"] = rm.error().message;
        j["pass"] = j["module"];
    }
    if (j["pass"] && doc->morphism) {
        json t = verify_algebra(doc->morphism->target);
        json m = t["pass"] ? verify_morphism(*doc->morphism) : t;
        j["morphism"] = m;
        j["pass"] = m["pass"];
        if (m.contains("witness")) j["witness"] = "morphism: " + m["witness"].get<std::string>();
    }
    return report(j, as_json, file);
}

int cmd_verify_all(bool as_json) {
    json all = json::object();
    bool ok = true;
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        if (p > max_p()) continue;
        for (const auto& e : catalog_algebras(p)) {
            json j = verify_algebra(e.algebra);
            ok = ok && j["pass"].get<bool>();
            all[e.name + "_p" + std::to_string(p)] = j;
        }
        for (const auto& [name, phi] : catalog_morphisms(p)) {
            json j = verify_morphism(phi);
            ok = ok && j["pass"].get<bool>();
            all[name + "_p" + std::to_string(p)] = j;
        }
    }
    if (as_json) {
        emit({{"pass", ok}, {"fixtures", all}});
    } else {
        for (auto it = all.begin(); it != all.end(); ++it) {
            std::cout << it.key() << ": " << (it.value()["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
            if (it.value().contains("witness")) std::cout << "  witness: " << it.value()["witness"].get<std::string>() << "\n";
        }
    }
    return ok ? Pass : Fail;
}

std::string render_representative(const FpVector& v, const PMap& P, std::size_t m, std::size_t q, bool ce,
                                  const std::vector<std::string>& dst) {
    const auto& src = P.algebra.labels();
    const PrimeField& f = P.field();
    if (ce || q < 2) return render_cochain(CeCochain::from_coords(f, P.dim(), m, q, v), src, dst);
    if (q == 2) return render_rc2(RC2::from_coords(f, P.dim(), m, v), src, dst);
    std::ostringstream os;
    os << ints(v).dump();
    return os.str();
}

int cmd_cohomology(const std::string& file, std::size_t q, const std::string& coeffs, bool ce, bool as_json) {
    auto doc = load_validated(file);
    if (!doc) {
        print_error(doc.error());
        return Fail;
    }
    const PMap& P = doc->algebra;
    std::optional<LModule> M;
    std::vector<std::string> dst;
    if (coeffs == "adjoint") {
        M = adjoint_module(P).module;
        dst = P.algebra.labels();
    } else if (coeffs == "trivial") {
        M = trivial_module(P).module;
        dst = {"1"};
    } else {
        if (!doc->module) {
            std::cerr << "error: " << file << " has no module block\n";
            return Usage;
        }
        if (!ce) {
            auto rm = make_restricted_module(P, *doc->module);
            if (!rm) {
                print_error(rm.error());
                return Fail;
            }
        }
        M = *doc->module;
        dst = generic_labels(M->dim());
    }
    Expected<CohomologyResult> res = ce ? Expected<CohomologyResult>(ce_cohomology(*M, q)) : restricted_cohomology(P, *M, q);
    if (!res) {
        print_error(res.error());
        return Fail;
    }
    const std::string name = "H" + superscript(q);
    if (as_json) {
        json reps = json::array();
        for (const auto& r : res->representatives) reps.push_back(ints(r));
        emit({{"p", P.p()},
              {"degree", q},
              {"coefficients", coeffs},
              {"complex", ce ? "ce" : "restricted"},
              {"dim", res->dim},
              {"cochain_dim", res->cochain_dim},
              {"cocycle_dim", res->cocycles.size()},
              {"coboundary_dim", res->coboundaries.size()},
              {"representatives", reps}});
    } else {
        std::cout << "dim " << name << " = " << res->dim << (ce ? " (ordinary)" : " (restricted)") << "\n";
        std::cout << "cochains " << res->cochain_dim << ", cocycles " << res->cocycles.size() << ", coboundaries "
                  << res->coboundaries.size() << "\n";
        for (std::size_t k = 0; k < res->representatives.size(); ++k)
            std::cout << "  [" << k << "] " << render_representative(res->representatives[k], P, M->dim(), q, ce, dst)
                      << "\n";
    }
    return Pass;
}

std::string describe_deformation_failure(const DeformationReport& r, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << r.kind << " fails at t^" << r.degree;
    for (std::size_t i = 0; i < r.args.size(); ++i) os << (i ? ", " : " on ") << element(r.args[i], labels);
    if (r.residual) os << " (residual " << element(*r.residual, labels) << ")";
    return os.str();
}

int cmd_deform(const std::string& file, const std::string& check, const std::string& extend,
               const std::vector<std::string>& equiv, bool as_json) {
    auto doc = load_validated(file);
    if (!doc) {
        print_error(doc.error());
        return Fail;
    }
    const PMap& P = doc->algebra;
    const auto& labels = P.algebra.labels();
    auto jet = [&](const std::string& path) { return load_jet(path, P); };
    if (!check.empty()) {
        auto D = jet(check);
        if (!D) {
            print_error(D.error());
            return Fail;
        }
        auto r = check_deformation(*D);
        json j{{"pass", r.ok}, {"order", D->order()}};
        if (!r.ok) j["witness"] = describe_deformation_failure(r, labels);
        if (D->order() >= 1) {
            auto inf = infinitesimal(*D);
            j["infinitesimal_cocycle"] = inf.cocycle;
            j["infinitesimal_coboundary"] = inf.coboundary;
        }
        if (!as_json && j.contains("infinitesimal_cocycle"))
            std::cout << "infinitesimal term: " << (j["infinitesimal_cocycle"].get<bool>() ? "cocycle" : "not a cocycle")
                      << (j["infinitesimal_coboundary"].get<bool>() ? ", coboundary" : "") << "\n";
        return report(j, as_json, check);
    }
    if (!extend.empty()) {
        auto D = jet(extend);
        if (!D) {
            print_error(D.error());
            return Fail;
        }
        auto base = check_deformation(*D);
        if (!base.ok) {
            std::cerr << "input jet is not a deformation: " << describe_deformation_failure(base, labels) << "\n";
            return Fail;
        }
        auto r = extend_order(*D);
        if (r.obstructed || !r.extended) {
            if (as_json) emit({{"pass", false}, {"obstructed", true}, {"order", D->order()}});
            else std::cout << "extension obstructed; class nonzero\n";
            return Fail;
        }
        if (as_json) {
            emit({{"pass", r.recheck.ok}, {"obstructed", false}, {"jet", json::parse(serialize_jet(*r.extended))}});
        } else {
            const RC2 c = r.extended->coefficient(r.extended->order());
            std::cout << "extended to order " << r.extended->order() << "\n";
            std::cout << "  term " << render_rc2(c, labels, labels) << "\n";
            std::cout << "  recheck: " << (r.recheck.ok ? "pass" : "FAIL") << "\n";
        }
        return r.recheck.ok ? Pass : Fail;
    }
    auto D1 = jet(equiv[0]);
    auto D2 = jet(equiv[1]);
    for (auto* d : {&D1, &D2})
        if (!*d) {
            print_error(d->error());
            return Fail;
        }
    const std::size_t N = std::min(D1->order(), D2->order());
    auto r = equivalence_solve(*D1, *D2, N);
    const bool ok = r.jet && r.verified;
    if (as_json) {
        json j{{"pass", ok}, {"order", N}};
        if (r.jet) {
            json phis = json::array();
            for (std::size_t k = 1; k < r.jet->phi.size(); ++k) phis.push_back(rows(r.jet->phi[k]));
            j["phi"] = phis;
        } else {
            j["failed_order"] = r.failed_order;
        }
        emit(j);
    } else if (ok) {
        std::cout << "equivalence found up to order " << N << "\n";
        for (std::size_t k = 1; k < r.jet->phi.size(); ++k) {
            std::cout << "  phi" << k << ":";
            for (std::size_t i = 0; i < labels.size(); ++i)
                std::cout << (i ? ", " : " ") << labels[i] << " -> " << element(r.jet->phi[k].column(i), labels);
            std::cout << "\n";
        }
    } else {
        std::cout << "no equivalence found (order " << r.failed_order << ")\n";
    }
    return ok ? Pass : Fail;
}

std::string form_name(const std::vector<long long>& t) {
    static const char* names[] = {"x*", "y*", "z*"};
    std::string s;
    for (int i = 0; i < 3; ++i) {
        if (!t[i]) continue;
        if (!s.empty()) s += " + ";
        if (t[i] != 1) s += std::to_string(t[i]);
        s += names[i];
    }
    return s.empty() ? "0" : s;
}

int cmd_classify(unsigned p, bool as_json) {
    if (p > max_p()) {
        std::cerr << "error: p = " << p << " exceeds RESLIE_MAX_P = " << max_p() << "\n";
        return Fail;
    }
    auto res = classify_heisenberg_pstructures(p);
    if (!res) {
        print_error(res.error());
        return Fail;
    }
    if (as_json) {
        json cls = json::array();
        for (const auto& c : *res)
            cls.push_back({{"representative", c.representative}, {"name", form_name(c.representative)}, {"members", c.members}});
        emit({{"p", p}, {"classes", cls}});
        return Pass;
    }
    std::cout << res->size() << " classes of p-structures on h over F_" << p << "\n";
    for (const auto& c : *res) std::cout << "  (h, " << form_name(c.representative) << ")  orbit size " << c.members.size() << "\n";
    return Pass;
}

int cmd_morph_file(const std::string& file, std::size_t q, bool ce, bool as_json) {
    auto doc = load_validated(file);
    if (!doc) {
        print_error(doc.error());
        return Fail;
    }
    if (!doc->morphism) {
        std::cerr << "error: " << file << " has no morphism block\n";
        return Usage;
    }
    auto res = morph_cohomology(*doc->morphism, q, ce ? MorphRegime::CE : MorphRegime::Restricted);
    if (!res) {
        print_error(res.error());
        return Fail;
    }
    if (as_json) {
        json reps = json::array();
        for (const auto& r : res->representatives) reps.push_back(ints(r));
        emit({{"degree", q}, {"complex", ce ? "ce" : "restricted"}, {"dim", res->dim}, {"representatives", reps}});
    } else {
        std::cout << "dim H" << superscript(q) << "(phi) = " << res->dim << (ce ? " (ordinary)" : " (restricted)") << "\n";
    }
    return Pass;
}

int cmd_morph_fixture(unsigned p, bool as_json) {
    if (p < 3) {
        std::cerr << "error: the morphism fixture needs p >= 3\n";
        return Usage;
    }
    const MorphismFixture F = morphism_fixture(p);
    const ThetaKernel K = morph_theta_kernel(F.phi, F.mu_omega, F.nu_eps);
    const std::size_t n = F.thetas.front().size();
    json members = json::array(), linear = json::array();
    const std::size_t r = rank_of(K.linear, n);
    for (const auto& th : F.thetas) {
        std::vector<FpVector> vs = K.linear;
        vs.push_back(th);
        linear.push_back(rank_of(vs, n) == r);
        bool in = false;
        if (K.particular) {
            vs.back() = th - *K.particular;
            in = rank_of(vs, n) == r;
        }
        members.push_back(in);
    }
    const bool pass = K.linear.size() == 3 && K.particular.has_value();
    json j{{"p", p},
           {"kernel_dim", K.linear.size()},
           {"affine", K.particular.has_value()},
           {"coboundary_dim", K.coboundaries.size()},
           {"theta_in_kernel", members},
           {"theta_in_linear_kernel", linear},
           {"pass", pass}};
    if (as_json) {
        emit(j);
    } else {
        std::cout << "kernel dimension " << K.linear.size() << (K.particular ? "" : " (no particular solution)") << "\n";
        for (std::size_t i = 0; i < F.thetas.size(); ++i)
            std::cout << "  theta" << i + 1 << ": " << (members[i].get<bool>() ? "in" : "not in") << " solution set, "
                      << (linear[i].get<bool>() ? "in" : "not in") << " homogeneous kernel\n";
        std::cout << (pass ? "pass" : "FAIL") << "\n";
    }
    return pass ? Pass : Fail;
}

std::optional<PMap> catalog_lookup(const std::string& name, unsigned p) {
    for (auto& e : catalog_algebras(p))
        if (e.name == name) return e.algebra;
    return std::nullopt;
}

bool write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text << "\n";
    return static_cast<bool>(out);
}

int cmd_export(const std::string& name, unsigned p, const std::string& out, const std::string& dir) {
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        for (unsigned q : {2u, 3u, 5u, 7u}) {
            if (q > max_p()) continue;
            for (const auto& e : catalog_algebras(q))
                if (!write_text(dir + "/" + e.name + "_p" + std::to_string(q) + ".json", serialize_algebra(e.algebra)))
                    return Fail;
            for (const auto& [mname, phi] : catalog_morphisms(q)) {
                if (mname.rfind("id_", 0) == 0) continue;
                AlgebraDocument d{phi.source, std::nullopt, phi};
                if (!write_text(dir + "/morphism_" + mname + "_p" + std::to_string(q) + ".json", serialize_document(d)))
                    return Fail;
            }
            if (q >= 3) {
                AlgebraDocument d{morphism_fixture(q).phi.source, std::nullopt, morphism_fixture(q).phi};
                if (!write_text(dir + "/morphism_fixture_p" + std::to_string(q) + ".json", serialize_document(d))) return Fail;
            }
        }
        if (2 <= max_p() && !write_text(dir + "/char2_example_jet.json", serialize_jet(char2_example_jet()))) return Fail;
        return Pass;
    }
    auto P = catalog_lookup(name, p);
    if (!P) {
        std::cerr << "error: no catalog algebra named " << name << " at p = " << p << "\n";
        return Usage;
    }
    const std::string text = serialize_algebra(*P);
    if (out.empty()) {
        std::cout << text << "\n";
        return Pass;
    }
    return write_text(out, text) ? Pass : Fail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reslie: restricted Lie algebras over F_p"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    auto* verify = app.add_subcommand("verify", "check Jacobi, p-map axioms and attachments");
    std::string vfile;
    bool all_fixtures = false;
    verify->add_option("file", vfile, "algebra document");
    verify->add_flag("--all-fixtures", all_fixtures, "verify every catalog algebra and morphism");
    verify->add_flag("--json", as_json);

    auto* coh = app.add_subcommand("cohomology", "restricted (or CE) cohomology");
    std::string cfile, coeffs = "adjoint";
    std::size_t degree = 0;
    bool ce = false;
    coh->add_option("file", cfile)->required();
    coh->add_option("--degree,-q", degree)->required();
    coh->add_option("--coefficients", coeffs)->check(CLI::IsMember({"adjoint", "trivial", "module"}));
    coh->add_flag("--ce", ce, "ordinary Chevalley-Eilenberg complex");
    coh->add_flag("--json", as_json);

    auto* def = app.add_subcommand("deform", "check, extend or compare truncated deformations");
    std::string dfile, check, extend;
    std::vector<std::string> equiv;
    def->add_option("file", dfile)->required();
    auto* o1 = def->add_option("--check", check);
    auto* o2 = def->add_option("--extend", extend);
    auto* o3 = def->add_option("--equiv", equiv)->expected(2);
    o1->excludes(o2)->excludes(o3);
    o2->excludes(o3);
    def->add_flag("--json", as_json);

    auto* cls = app.add_subcommand("classify", "p-structures on the Heisenberg algebra");
    unsigned hp = 0;
    cls->add_option("--heisenberg", hp)->required();
    cls->add_flag("--json", as_json);

    auto* morph = app.add_subcommand("morph", "morphism complexes");
    std::string mfile;
    unsigned fixture_p = 0;
    morph->add_option("file", mfile);
    morph->add_option("--degree,-q", degree);
    morph->add_flag("--ce", ce);
    morph->add_option("--fixture", fixture_p, "solve the theta system of the built-in morphism fixture");
    morph->add_flag("--json", as_json);

    auto* exp = app.add_subcommand("export", "write catalog algebras as documents");
    std::string ename, eout, edir;
    unsigned ep = 0;
    exp->add_option("name", ename);
    exp->add_option("--p", ep);
    exp->add_option("-o,--output", eout);
    exp->add_option("--all", edir, "write every fixture into a directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Pass : Usage;
    }

    try {
        if (*verify) {
            if (all_fixtures) return cmd_verify_all(as_json);
            if (vfile.empty()) {
                std::cerr << "error: verify needs a file or --all-fixtures\n";
                return Usage;
            }
            return cmd_verify(vfile, as_json);
        }
        if (*coh) return cmd_cohomology(cfile, degree, coeffs, ce, as_json);
        if (*def) {
            if (check.empty() && extend.empty() && equiv.empty()) {
                std::cerr << "error: deform needs --check, --extend or --equiv\n";
                return Usage;
            }
            return cmd_deform(dfile, check, extend, equiv, as_json);
        }
        if (*cls) return cmd_classify(hp, as_json);
        if (*morph) {
            if (fixture_p) return cmd_morph_fixture(fixture_p, as_json);
            if (mfile.empty()) {
                std::cerr << "error: morph needs a file or --fixture p\n";
                return Usage;
            }
            return cmd_morph_file(mfile, degree, ce, as_json);
        }
        if (*exp) {
            if (edir.empty() && (ename.empty() || !ep)) {
                std::cerr << "error: export needs NAME --p P or --all DIR\n";
                return Usage;
            }
            return cmd_export(ename, ep, eout, edir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Fail;
    }
    return Usage;
}
