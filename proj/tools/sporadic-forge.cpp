// sporadic-forge: exact computation of the sporadic sequence A_delta via
// three representations, numerical verification of its two-term
// supercongruences, and executable verifiers for every identity used along
// the way. Output is an aligned table (human) or newline-delimited JSON
// (machine); exit status is 0 exactly when every emitted verdict passes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sporadic/congruence.hpp"
#include "sporadic/decomposition.hpp"
#include "sporadic/laurent.hpp"
#include "sporadic/parallel.hpp"
#include "sporadic/proofsteps.hpp"
#include "sporadic/report.hpp"
#include "sporadic/seqdsl.hpp"
#include "sporadic/sequences.hpp"

namespace {

using namespace sporadic;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Output {
    bool json = false;
    bool header_printed = false;
    int64_t emitted = 0;
    int64_t failed = 0;

    void emit(const CheckResult& r) {
        ++emitted;
        if (!r.pass) ++failed;
        if (json) {
            ordered_json record;
            record["check"] = r.check;
            ordered_json params = ordered_json::object();
            for (const auto& [k, v] : r.params) params[k] = v;
            record["params"] = std::move(params);
            record["observed"] = r.observed;
            record["required"] = r.required;
            record["verdict"] = r.pass ? "pass" : "fail";
            std::cout << record.dump() << "\n";
            return;
        }
        if (!header_printed) {
            std::printf("%-20s %-58s %-30s %-20s %s\n", "CHECK", "PARAMS", "OBSERVED", "REQUIRED",
                        "VERDICT");
            header_printed = true;
        }
        std::printf("%-20s %-58s %-30s %-20s %s\n", r.check.c_str(), r.params_str().c_str(),
                    r.observed.c_str(), r.required.c_str(), r.pass ? "pass" : "FAIL");
    }

    int exit_code() const { return failed == 0 ? kExitOk : kExitCheckFailed; }
};

CheckResult value_record(const std::string& check, const std::string& seq, int64_t n,
                         const Integer& value) {
    CheckResult r;
    r.check = check;
    r.params = {{"seq", seq}, {"n", std::to_string(n)}};
    r.observed = value.get_str();
    r.required = "-";
    r.pass = true;
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Sequence selection shared by compute/verify/sweep: the built-in delta
// (with a representation choice) or a DSL definition file. User-supplied
// definitions must declare lambda explicitly; delta defaults to lambda = 3.
struct SeqOptions {
    std::string name = "delta";
    std::string file;
    std::string representation = "binomial";
    int64_t budget = kMultinomialSumDefaultCap;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seq", name, "built-in sequence name (delta)");
        cmd->add_option("--seq-file", file, "DSL definition file (.seq)");
        cmd->add_option("--representation", representation,
                        "delta evaluator: binomial | multinomial | laurent")
            ->check(CLI::IsMember({"binomial", "multinomial", "laurent"}));
    }

    Sequence resolve() const {
        if (!file.empty()) {
            auto def = std::make_shared<dsl::SequenceDef>(dsl::parse(read_file(file)));
            std::string name_ = def->name;
            return Sequence{name_, [def](int64_t n) { return dsl::evaluate(*def, n); }};
        }
        if (name != "delta")
            throw CLI::ValidationError("--seq", "unknown built-in sequence '" + name + "'");
        if (representation == "multinomial") return delta_multinomial_sequence(budget);
        if (representation == "laurent") return delta_constant_term_sequence();
        return delta_binomial_sequence();
    }

    bool user_supplied() const { return !file.empty(); }
};

int64_t require_lambda(const SeqOptions& seq, int64_t lambda) {
    if (lambda != 0) return lambda;
    if (seq.user_supplied())
        throw CLI::ValidationError(
            "--lambda", "user-supplied sequences must declare their congruence strength");
    return 3;  // Theorem strength for delta
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact sporadic-sequence computation and supercongruence verification"};
    app.require_subcommand(1);

    Output out;
    int64_t jobs = 0;
    int64_t budget = kMultinomialSumDefaultCap;
    app.add_flag("--json", out.json, "newline-delimited JSON records");
    app.add_option("--jobs", jobs, "worker threads (0 = auto; SPORADIC_FORGE_JOBS overrides)");
    app.add_option("--budget", budget, "full-enumeration cap for U(n) sweeps (default 12)")
        ->check(CLI::PositiveNumber);

    std::function<void()> run;

    // ---- compute ----
    auto* compute = app.add_subcommand("compute", "evaluate a sequence at one or more indices");
    {
        auto seq_opts = std::make_shared<SeqOptions>();
        auto n = std::make_shared<int64_t>(-1);
        auto n_max = std::make_shared<int64_t>(-1);
        seq_opts->attach(compute);
        compute->add_option("--n", *n, "single index");
        compute->add_option("--n-max", *n_max, "evaluate all of 0..n-max");
        compute->callback([&, seq_opts, n, n_max] {
            run = [&, seq_opts, n, n_max] {
                seq_opts->budget = std::max(budget, *n >= 0 ? *n : *n_max);
                Sequence seq = seq_opts->resolve();
                if (*n < 0 && *n_max < 0)
                    throw CLI::ValidationError("compute", "need --n or --n-max");
                if (*n >= 0) out.emit(value_record("compute", seq.name, *n, seq.eval(*n)));
                for (int64_t i = 0; *n_max >= 0 && i <= *n_max; ++i)
                    out.emit(value_record("compute", seq.name, i, seq.eval(i)));
            };
        });
    }

    // ---- crosscheck ----
    auto* crosscheck =
        app.add_subcommand("crosscheck", "agreement of the three delta representations");
    {
        auto n_max = std::make_shared<int64_t>(10);
        auto multi_max = std::make_shared<int64_t>(-1);
        crosscheck->add_option("--n-max", *n_max, "binomial vs constant-term range (default 10)");
        crosscheck->add_option("--multinomial-max", *multi_max,
                               "three-way range (default min(n-max, budget))");
        crosscheck->callback([&, n_max, multi_max] {
            run = [&, n_max, multi_max] {
                const int64_t top = *n_max;
                const int64_t multi = *multi_max >= 0 ? *multi_max : std::min(top, budget);
                auto ct = ct_lambda_power_upto(top);
                for (int64_t n = 0; n <= top; ++n) {
                    const Integer bin = a_delta_binomial(n);
                    bool ok = bin == ct[static_cast<size_t>(n)];
                    std::string observed = "binomial=" + bin.get_str();
                    observed += ",laurent=" + (ok ? std::string("same") : ct[static_cast<size_t>(n)].get_str());
                    if (n <= multi) {
                        const Integer mult = a_delta_multinomial(n, std::max(multi, budget));
                        observed += ",multinomial=" + (mult == bin ? std::string("same") : mult.get_str());
                        ok = ok && mult == bin;
                    }
                    CheckResult r;
                    r.check = "crosscheck";
                    r.params = {{"n", std::to_string(n)}};
                    r.observed = observed;
                    r.required = "all-equal";
                    r.pass = ok;
                    out.emit(r);
                }
            };
        });
    }

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "one two-term supercongruence check");
    {
        auto seq_opts = std::make_shared<SeqOptions>();
        auto cp = std::make_shared<CongruenceParams>();
        auto lambda = std::make_shared<int64_t>(0);
        seq_opts->attach(verify);
        verify->add_option("--p", cp->p, "prime >= 5")->required();
        verify->add_option("--m", cp->m, "multiplier m >= 1");
        verify->add_option("--r", cp->r, "exponent r >= 1");
        verify->add_option("--lambda", *lambda, "congruence strength (2 or 3)");
        verify->callback([&, seq_opts, cp, lambda] {
            run = [&, seq_opts, cp, lambda] {
                cp->lambda = require_lambda(*seq_opts, *lambda);
                seq_opts->budget = std::max(budget, cp->m * ipow64(cp->p, cp->r));
                out.emit(check_supercongruence(seq_opts->resolve(), *cp).to_check_result());
            };
        });
    }

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "supercongruence checks over a parameter grid");
    {
        auto seq_opts = std::make_shared<SeqOptions>();
        auto p_max = std::make_shared<int64_t>(13);
        auto m_max = std::make_shared<int64_t>(3);
        auto r_max = std::make_shared<int64_t>(2);
        auto lambda = std::make_shared<int64_t>(0);
        seq_opts->attach(sweep_cmd);
        sweep_cmd->add_option("--p-max", *p_max, "largest prime (default 13)");
        sweep_cmd->add_option("--m-max", *m_max, "largest m (default 3)");
        sweep_cmd->add_option("--r-max", *r_max, "largest r (default 2)");
        sweep_cmd->add_option("--lambda", *lambda, "congruence strength (2 or 3)");
        sweep_cmd->callback([&, seq_opts, p_max, m_max, r_max, lambda] {
            run = [&, seq_opts, p_max, m_max, r_max, lambda] {
                const int64_t lam = require_lambda(*seq_opts, *lambda);
                seq_opts->budget = std::max(budget, *m_max * ipow64(*p_max, *r_max));
                for (const auto& rep :
                     sweep(seq_opts->resolve(), *p_max, *m_max, *r_max, lam, resolve_jobs(jobs)))
                    out.emit(rep.to_check_result());
            };
        });
    }

    // ---- lemma ----
    auto* lemma = app.add_subcommand("lemma", "run one named verifier");
    lemma->require_subcommand(1);
    {
        struct LemmaArgs {
            int64_t p = 5, m = 1, k = 1, r = 1, s = 1, ell = 0, t = 1, n = 5;
            int64_t l1 = 0, l3 = 0, l4 = 0, l6 = 0;
            std::string x = "0";
            std::string sign = "plus";
        };
        auto a = std::make_shared<LemmaArgs>();
        auto sign_of = [](const std::string& s) {
            return s == "minus" ? ThirdFactorSign::kMinus : ThirdFactorSign::kPlus;
        };
        auto ell_of = [](const LemmaArgs& la) {
            std::array<int64_t, 12> ell{};
            ell[0] = la.l1, ell[2] = la.l3, ell[3] = la.l4, ell[5] = la.l6;
            return ell;
        };
        auto parse_x = [](const std::string& text) {
            Rational q;
            if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0 || q.get_den() == 0)
                throw CLI::ValidationError("--x", "expected a rational like 7/2");
            q.canonicalize();
            return q;
        };

        auto add_sign = [&](CLI::App* cmd) {
            cmd->add_option("--third-sign", a->sign, "third C factor sign: plus | minus")
                ->check(CLI::IsMember({"plus", "minus"}));
        };
        auto add_ell = [&](CLI::App* cmd) {
            cmd->add_option("--l1", a->l1, "ell_1");
            cmd->add_option("--l3", a->l3, "ell_3");
            cmd->add_option("--l4", a->l4, "ell_4");
            cmd->add_option("--l6", a->l6, "ell_6");
        };

        auto* jg = lemma->add_subcommand("jg", "binomial ratio congruence");
        jg->add_option("--p", a->p)->required();
        jg->add_option("--m", a->m);
        jg->add_option("--k", a->k);
        jg->add_option("--r", a->r);
        jg->add_option("--s", a->s);
        jg->callback([&, a] { run = [&, a] { out.emit(lemma_jg(a->p, a->m, a->k, a->r, a->s)); }; });

        auto* easier = lemma->add_subcommand("easier", "exact p^{r-s} (m/k) identity");
        easier->add_option("--p", a->p)->required();
        easier->add_option("--m", a->m);
        easier->add_option("--k", a->k);
        easier->add_option("--r", a->r);
        easier->add_option("--s", a->s);
        easier->callback(
            [&, a] { run = [&, a] { out.emit(easier_identity(a->p, a->m, a->k, a->r, a->s)); }; });

        auto* har = lemma->add_subcommand("har", "alternating inverse-square sum mod p^s");
        har->add_option("--p", a->p)->required();
        har->add_option("--s", a->s);
        har->callback([&, a] { run = [&, a] { out.emit(lemma_har(a->p, a->s)); }; });

        auto* l1 = lemma->add_subcommand("l1", "signed C(mp^s - 1, k) descent");
        l1->add_option("--p", a->p)->required();
        l1->add_option("--m", a->m);
        l1->add_option("--k", a->k);
        l1->add_option("--s", a->s);
        l1->callback([&, a] { run = [&, a] { out.emit(lemma_l1(a->p, a->m, a->k, a->s)); }; });

        auto* l2 = lemma->add_subcommand("l2", "C(mp^s - ell, kp^s) descent");
        l2->add_option("--p", a->p)->required();
        l2->add_option("--m", a->m);
        l2->add_option("--k", a->k);
        l2->add_option("--ell", a->ell);
        l2->add_option("--s", a->s);
        l2->callback([&, a] { run = [&, a] { out.emit(lemma_l2(a->p, a->m, a->k, a->ell, a->s)); }; });

        auto* l3 = lemma->add_subcommand("l3", "scaling congruence for the C function");
        l3->add_option("--p", a->p)->required();
        l3->add_option("--s", a->s);
        l3->add_option("--n", a->n);
        l3->add_option("--x", a->x, "rational in [0, p^s], e.g. 7/2");
        add_ell(l3);
        add_sign(l3);
        l3->callback([&, a, sign_of, ell_of, parse_x] {
            run = [&, a, sign_of, ell_of, parse_x] {
                out.emit(lemma_l3(a->p, a->s, ell_of(*a), a->n, parse_x(a->x), sign_of(a->sign)));
            };
        });

        auto* reduce3 = lemma->add_subcommand("reduce3", "inner-sum descent chain");
        reduce3->add_option("--p", a->p)->required();
        reduce3->add_option("--s", a->s);
        reduce3->add_option("--t", a->t);
        reduce3->add_option("--m", a->m);
        reduce3->add_option("--r", a->r);
        add_ell(reduce3);
        add_sign(reduce3);
        reduce3->callback([&, a, sign_of, ell_of] {
            run = [&, a, sign_of, ell_of] {
                out.emit(reduce3_chain(a->p, a->s, a->t, ell_of(*a), a->m, a->r, sign_of(a->sign)));
            };
        });

        auto* grids = lemma->add_subcommand("grids", "the full verification grids");
        add_sign(grids);
        grids->callback([&, a, sign_of] {
            run = [&, a, sign_of] {
                for (const auto& r : lemma_grid_all(sign_of(a->sign))) out.emit(r);
            };
        });
    }

    // ---- decompose ----
    auto* decompose = app.add_subcommand("decompose", "partition and sum-decomposition checks");
    {
        auto p = std::make_shared<int64_t>(5);
        auto m = std::make_shared<int64_t>(1);
        auto r = std::make_shared<int64_t>(1);
        decompose->add_option("--p", *p, "prime >= 5")->required();
        decompose->add_option("--m", *m, "multiplier m >= 1");
        decompose->add_option("--r", *r, "exponent r >= 1");
        decompose->callback([&, p, m, r] {
            run = [&, p, m, r] {
                if (*m * ipow64(*p, *r) > budget)
                    throw CLI::ValidationError(
                        "decompose", "mp^r exceeds the enumeration budget; raise --budget");
                for (const auto& rec : decompose_all(*p, *m, *r)) out.emit(rec);
            };
        });
    }

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "parse and evaluate a DSL definition file");
    {
        auto file = std::make_shared<std::string>();
        auto n = std::make_shared<int64_t>(-1);
        auto n_max = std::make_shared<int64_t>(-1);
        auto canonical = std::make_shared<bool>(false);
        eval->add_option("--file", *file, "definition file")->required();
        eval->add_option("--n", *n, "single index");
        eval->add_option("--n-max", *n_max, "evaluate all of 0..n-max");
        eval->add_flag("--canonical", *canonical, "print the canonical form");
        eval->callback([&, file, n, n_max, canonical] {
            run = [&, file, n, n_max, canonical] {
                auto def = dsl::parse(read_file(*file));
                if (*canonical) {
                    CheckResult r;
                    r.check = "dsl-canonical";
                    r.params = {{"seq", def.name}};
                    r.observed = dsl::print(def);
                    r.required = "-";
                    r.pass = true;
                    out.emit(r);
                }
                if (*n >= 0) out.emit(value_record("dsl-eval", def.name, *n, dsl::evaluate(def, *n)));
                for (int64_t i = 0; *n_max >= 0 && i <= *n_max; ++i)
                    out.emit(value_record("dsl-eval", def.name, i, dsl::evaluate(def, i)));
                if (*n < 0 && *n_max < 0 && !*canonical)
                    throw CLI::ValidationError("eval", "need --n, --n-max or --canonical");
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        run();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dsl::ParseError& e) {
        CheckResult r;
        r.check = "dsl-parse";
        r.observed = e.what();
        r.required = "well-formed definition";
        r.pass = false;
        out.emit(r);
        return kExitCheckFailed;
    } catch (const dsl::EvalError& e) {
        CheckResult r;
        r.check = "dsl-eval";
        r.observed = e.what();
        r.required = "exact integer value";
        r.pass = false;
        out.emit(r);
        return kExitCheckFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return out.exit_code();
}
