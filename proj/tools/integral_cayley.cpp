/**
 * integral-cayley: build finite Z/n-algebras from JSON specs, certify the
 * symmetric-algebra property, compute exact Cayley-graph spectra, verify the
 * integral <=> stable equivalence, and run census batches.
 *
 * Exit codes: 0 success/consistent, 1 input error, 3 negative certification,
 * 2 internal cap exceeded or invariant failure.
 */
#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cayley/cayley.hpp"

namespace {

using cayley::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCap = 2;
constexpr int kExitNegative = 3;

struct NotSymmetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedRing {
    cayley::RingSpec spec;
    cayley::FiniteRing ring;
    std::string hash;
};

LoadedRing load_ring(const std::string& path) {
    cayley::RingSpec spec = cayley::load_spec_file(path);
    cayley::FiniteRing ring = cayley::build_ring(spec);
    std::string hash = cayley::spec_hash(spec);
    return {std::move(spec), std::move(ring), std::move(hash)};
}

std::vector<std::uint64_t> parse_index_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long long v = std::stoull(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("invalid index: " + item);
        out.push_back(v);
    }
    return out;
}

// Selector: explicit index list, "units", "gcd:<d>", or "orbit:<i>".
std::vector<std::uint64_t> parse_selector(const LoadedRing& lr, const std::string& sel) {
    if (sel == "units") return cayley::unit_group(lr.ring).elements;
    if (sel.rfind("gcd:", 0) == 0) {
        if (lr.ring.rank() != 1 || lr.ring.divisors()[0] != lr.ring.scalar_modulus())
            throw std::invalid_argument("gcd:<d> selector requires a Z/n ring");
        std::uint64_t d = std::stoull(sel.substr(4));
        auto classes = cayley::gcd_classes(lr.ring.scalar_modulus());
        auto it = classes.find(d);
        if (it == classes.end()) throw std::invalid_argument("gcd:<d> needs a divisor of n");
        return it->second;
    }
    if (sel.rfind("orbit:", 0) == 0) {
        std::uint64_t i = std::stoull(sel.substr(6));
        auto orbits = cayley::scalar_orbits(lr.ring);
        if (i >= orbits.orbits.size()) throw std::invalid_argument("orbit index out of range");
        return orbits.orbits[i];
    }
    return parse_index_list(sel);
}

cayley::LinearFunctional certified_functional(const LoadedRing& lr) {
    auto cert = cayley::certify_symmetric(lr.spec, lr.ring);
    if (!cert.symmetric)
        throw NotSymmetricError("ring is not a symmetric Z/n-algebra; no non-degenerate functional");
    return *cert.psi;
}

cayley::LinearFunctional obtain_functional(const LoadedRing& lr, const std::string& psi_csv) {
    if (psi_csv.empty()) return certified_functional(lr);
    cayley::LinearFunctional psi(lr.ring, parse_index_list(psi_csv));
    if (!cayley::is_nondegenerate(psi))
        throw std::invalid_argument("--psi supplies a degenerate functional; spectrum requires a "
                                    "non-degenerate one");
    return psi;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
        f << j.dump(2) << "\n";
    }
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

// ---------------------------------------------------------------------------

int cmd_certify(const std::string& path) {
    LoadedRing lr = load_ring(path);
    auto cert = cayley::certify_symmetric(lr.spec, lr.ring);
    json j;
    if (cert.symmetric) {
        j = json{{"symmetric", true}, {"psi", cert.psi->generator_values()}};
    } else {
        j = json{{"symmetric", false}, {"witness_ideals", cert.witness_ideals}};
    }
    std::cout << j.dump(2) << "\n";
    return cert.symmetric ? kExitOk : kExitNegative;
}

int cmd_spectrum(const std::string& path, const std::string& sel, const std::string& psi_csv,
                 bool with_oracle, const std::string& dot_path, const std::string& out_path) {
    LoadedRing lr = load_ring(path);
    cayley::LinearFunctional psi = obtain_functional(lr, psi_csv);
    cayley::CayleyGraphSpec graph(lr.ring, parse_selector(lr, sel));
    cayley::SpectrumReport report = cayley::spectrum(graph, psi);
    json j = cayley::report_to_json(report, lr.hash);
    if (!cayley::report_json_consistent(j))
        throw std::logic_error("emitted spectrum report failed self-validation");
    if (with_oracle) {
        auto numeric = cayley::numeric_spectrum_oracle(graph);
        std::vector<double> exact;
        double max_imag = 0.0;
        for (const auto& ev : report.eigenvalues) {
            auto z = cayley::embed_numeric(ev);
            exact.push_back(z.real());
            max_imag = std::max(max_imag, std::abs(z.imag()));
        }
        std::sort(exact.begin(), exact.end());
        double dev = max_imag;
        for (std::size_t i = 0; i < exact.size(); ++i)
            dev = std::max(dev, std::abs(exact[i] - numeric[i]));
        j["oracle_max_deviation"] = dev;
    }
    if (!dot_path.empty()) {
        std::ofstream f(dot_path);
        if (!f) throw std::invalid_argument("cannot open DOT output path: " + dot_path);
        f << cayley::to_dot(graph);
    }
    emit(j, out_path);
    return kExitOk;
}

json cells_json(const cayley::TheoremReport& report) {
    return json{{"stable_integral", report.stable_integral},
                {"stable_nonintegral", report.stable_nonintegral},
                {"unstable_integral", report.unstable_integral},
                {"unstable_nonintegral", report.unstable_nonintegral}};
}

int cmd_verify(const std::string& path, bool exhaustive, std::uint64_t sample,
               std::uint64_t seed, const std::string& set_csv) {
    LoadedRing lr = load_ring(path);
    cayley::LinearFunctional psi = certified_functional(lr);
    cayley::TheoremReport report;
    if (!set_csv.empty()) {
        report = cayley::verify_theorem_single(lr.ring, psi, parse_selector(lr, set_csv));
    } else if (sample > 0 && !exhaustive) {
        report = cayley::verify_theorem_sampled(lr.ring, psi, sample, seed);
    } else {
        report = cayley::verify_theorem_exhaustive(lr.ring, psi);
    }
    json j{{"ring", lr.hash},
           {"mode", report.mode},
           {"tested", report.tested},
           {"cells", cells_json(report)},
           {"consistent", report.consistent()},
           {"violations", report.violations}};
    std::cout << j.dump(2) << "\n";
    if (report.consistent()) return kExitOk;
    std::cerr << "error: integral <=> stable equivalence violated\n";
    return kExitCap;
}

struct CensusOptions {
    std::string family;
    std::uint64_t min_n = 0, max_n = 0;
    std::vector<std::string> spec_paths;
    bool exhaustive = false;  // set by flag; sampling wins only when the flag is absent
    std::uint64_t sample = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    bool no_timestamp = false;
};

int cmd_census(const CensusOptions& opt) {
    std::vector<std::pair<std::string, cayley::RingSpec>> items;
    if (opt.family == "zn") {
        if (opt.min_n == 0 || opt.max_n < opt.min_n)
            throw std::invalid_argument("census: --family zn needs 1 <= --min <= --max");
        for (std::uint64_t n = opt.min_n; n <= opt.max_n; ++n)
            items.emplace_back("zn:" + std::to_string(n), cayley::RingSpec{cayley::ZnSpec{n}});
    } else if (!opt.family.empty()) {
        throw std::invalid_argument("census: unknown family '" + opt.family + "'");
    }
    for (const auto& p : opt.spec_paths) items.emplace_back(p, cayley::load_spec_file(p));

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path);
        if (!file) throw std::invalid_argument("census: cannot open output path: " + opt.out_path);
        out = &file;
    }

    std::mt19937_64 rng(opt.seed);
    std::uint64_t records = 0, stable_count = 0, integral_count = 0, violations = 0, skipped = 0;
    for (const auto& [name, spec] : items) {
        cayley::FiniteRing ring = cayley::build_ring(spec);
        const std::string hash = cayley::spec_hash(spec);
        auto cert = cayley::certify_symmetric(spec, ring);
        if (!cert.symmetric) {
            json j{{"ring", hash}, {"skipped", "not_symmetric"}};
            if (!opt.no_timestamp) j["timestamp"] = iso_timestamp();
            *out << j.dump() << "\n";
            ++skipped;
            continue;
        }
        const auto& psi = *cert.psi;
        cayley::detail::TheoremVerifier verifier(ring, psi);
        const std::size_t c = verifier.classes().size();
        std::vector<std::vector<std::uint8_t>> choices;
        if (opt.sample > 0 && !opt.exhaustive) {
            choices.assign(opt.sample, std::vector<std::uint8_t>(c, 0));
            for (auto& choice : choices)
                for (std::size_t bit = 0; bit < c; ++bit) choice[bit] = rng() & 1;
        } else {
            if (c > cayley::detail::kExhaustiveClassCap)
                throw cayley::CapExceeded(
                    "census: more than 20 negation classes in " + name + "; use --sample");
            choices.assign(std::size_t{1} << c, std::vector<std::uint8_t>(c, 0));
            for (std::size_t i = 0; i < choices.size(); ++i)
                for (std::size_t bit = 0; bit < c; ++bit) choices[i][bit] = (i >> bit) & 1;
        }
        for (const auto& choice : choices) {
            auto s_set = verifier.choice_to_set(choice);
            auto [stable, integral] = verifier.classify_choice(choice);
            cayley::CayleyGraphSpec graph(ring, s_set);
            cayley::SpectrumReport report = cayley::spectrum(graph, psi);
            if (report.integral != integral)
                throw std::logic_error("census: integrality paths disagree");
            if (stable && !integral)
                throw std::logic_error("census: stable but non-integral record (theorem violated)");
            json j{{"ring", hash},
                   {"S", s_set},
                   {"stable", stable},
                   {"integral", integral},
                   {"digest", cayley::spectrum_digest(report)}};
            if (!opt.no_timestamp) j["timestamp"] = iso_timestamp();
            *out << j.dump() << "\n";
            ++records;
            if (stable) ++stable_count;
            if (integral) ++integral_count;
            if (stable != integral) ++violations;
        }
    }
    json summary{{"summary",
                  json{{"rings", items.size()},
                       {"records", records},
                       {"stable", stable_count},
                       {"integral", integral_count},
                       {"violations", violations},
                       {"skipped", skipped}}}};
    *out << summary.dump() << "\n";
    return violations == 0 ? kExitOk : kExitCap;
}

int cmd_paley(const std::string& path, const std::string& char_kind, const std::string& out_path) {
    LoadedRing lr = load_ring(path);
    cayley::MultiplicativeCharacter chi = [&]() {
        if (char_kind == "quartic") return cayley::quartic_residue_character(lr.spec, lr.ring);
        if (char_kind == "quadratic") return cayley::quadratic_character(lr.ring);
        if (char_kind == "trivial") return cayley::trivial_character(lr.ring);
        throw std::invalid_argument("paley: --char must be quartic, quadratic or trivial");
    }();
    cayley::CayleyGraphSpec graph = cayley::paley_graph(lr.ring, chi);
    cayley::LinearFunctional psi = certified_functional(lr);
    cayley::SpectrumReport report = cayley::spectrum(graph, psi);
    json j = cayley::report_to_json(report, lr.hash);
    if (!cayley::report_json_consistent(j))
        throw std::logic_error("emitted spectrum report failed self-validation");
    j["character_order"] = chi.order();
    j["kernel"] = cayley::character_kernel(chi);
    j["induced_trivial"] =
        cayley::induced_dirichlet_is_trivial(chi, lr.ring.scalar_modulus());
    emit(j, out_path);
    return kExitOk;
}

int cmd_export(const std::string& path, const std::string& sel, const std::string& dot_path) {
    LoadedRing lr = load_ring(path);
    cayley::CayleyGraphSpec graph(lr.ring, parse_selector(lr, sel));
    std::ofstream f(dot_path);
    if (!f) throw std::invalid_argument("cannot open DOT output path: " + dot_path);
    f << cayley::to_dot(graph);
    return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const NotSymmetricError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const cayley::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const cayley::SpecParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectra of Cayley graphs over finite symmetric Z/n-algebras"};
    app.require_subcommand(1);

    std::string spec_path, set_sel, psi_csv, dot_path, out_path, char_kind = "quartic";
    bool with_oracle = false, exhaustive = false;
    std::uint64_t sample = 0, seed = 0;
    CensusOptions census;

    auto* certify = app.add_subcommand("certify", "certify the symmetric-algebra property");
    certify->add_option("spec", spec_path, "ring spec JSON file")->required();

    auto* spectrum = app.add_subcommand("spectrum", "exact spectrum of Gamma(R,S)");
    spectrum->add_option("spec", spec_path, "ring spec JSON file")->required();
    spectrum->add_option("--set", set_sel, "indices, 'units', 'gcd:<d>' or 'orbit:<i>'")->required();
    spectrum->add_option("--psi", psi_csv, "functional generator values (comma separated)");
    spectrum->add_flag("--oracle", with_oracle, "append numeric cross-check max deviation");
    spectrum->add_option("--dot", dot_path, "write graph DOT file");
    spectrum->add_option("--out", out_path, "write report to file instead of stdout");

    auto* verify = app.add_subcommand("verify", "verify integral <=> stable over symmetric S");
    verify->add_option("spec", spec_path, "ring spec JSON file")->required();
    verify->add_flag("--exhaustive", exhaustive, "all unions of negation classes (default)");
    verify->add_option("--sample", sample, "number of random symmetric subsets");
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--set", set_sel, "test a single connection set");

    auto* census_cmd = app.add_subcommand("census", "batch (ring, S) records as JSON lines");
    census_cmd->add_option("--family", census.family, "ring family (zn)");
    census_cmd->add_option("--min", census.min_n, "family lower bound");
    census_cmd->add_option("--max", census.max_n, "family upper bound");
    census_cmd->add_option("--spec", census.spec_paths, "explicit ring spec files");
    census_cmd->add_flag("--exhaustive", census.exhaustive, "exhaustive subsets (default)");
    census_cmd->add_option("--sample", census.sample, "random subsets per ring");
    census_cmd->add_option("--seed", census.seed, "sampling seed");
    census_cmd->add_option("--out", census.out_path, "output path (default stdout)");
    census_cmd->add_flag("--no-timestamp", census.no_timestamp, "suppress timestamps");

    auto* paley = app.add_subcommand("paley", "Paley graph P_chi spectrum and criterion");
    paley->add_option("--ring", spec_path, "ring spec JSON file")->required();
    paley->add_option("--char", char_kind, "quartic|quadratic|trivial");
    paley->add_option("--out", out_path, "write report to file instead of stdout");

    auto* export_cmd = app.add_subcommand("export", "DOT export of Gamma(R,S)");
    export_cmd->add_option("spec", spec_path, "ring spec JSON file")->required();
    export_cmd->add_option("--set", set_sel, "connection set selector")->required();
    export_cmd->add_option("--dot", dot_path, "DOT output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (app.got_subcommand(certify)) return guarded([&] { return cmd_certify(spec_path); });
    if (app.got_subcommand(spectrum))
        return guarded([&] {
            return cmd_spectrum(spec_path, set_sel, psi_csv, with_oracle, dot_path, out_path);
        });
    if (app.got_subcommand(verify))
        return guarded([&] { return cmd_verify(spec_path, exhaustive, sample, seed, set_sel); });
    if (app.got_subcommand(census_cmd)) return guarded([&] { return cmd_census(census); });
    if (app.got_subcommand(paley))
        return guarded([&] { return cmd_paley(spec_path, char_kind, out_path); });
    if (app.got_subcommand(export_cmd))
        return guarded([&] { return cmd_export(spec_path, set_sel, dot_path); });
    return kExitInput;
}
