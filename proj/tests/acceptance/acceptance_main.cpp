// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Run with no arguments for all criteria, or pass criterion
// numbers (1..10) to run a subset.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cayley/cayley.hpp"
#include "../cli_support.hpp"
#include "../support.hpp"

using namespace cayley;
using testsupport::NamedSpec;

namespace {

constexpr std::uint64_t kSampleSeed = 20260810;

struct Outcome {
    bool pass = false;
    std::string detail;
};

// --------------------------------------------------------------- criterion 1
// Main theorem over the battery: every symmetric S (exhaustive when the ring
// has at most 16 negation classes, else 500 seeded samples) satisfies
// is_integral <=> is_stable. Exact arithmetic, zero violations.
Outcome criterion_main_theorem() {
    std::uint64_t tested = 0, violations = 0;
    std::ostringstream detail;
    for (const auto& named : testsupport::theorem_battery()) {
        FiniteRing ring = build_ring(named.spec);
        LinearFunctional psi = canonical_functional(named.spec, ring);
        const std::size_t classes = negation_classes(ring).size();
        TheoremReport report = classes <= 16
                                   ? verify_theorem_exhaustive(ring, psi)
                                   : verify_theorem_sampled(ring, psi, 500, kSampleSeed);
        tested += report.tested;
        violations += report.stable_nonintegral + report.unstable_integral;
        if (!report.consistent()) detail << " " << named.name << " INCONSISTENT;";
    }
    std::ostringstream msg;
    msg << tested << " symmetric subsets across " << testsupport::theorem_battery().size()
        << " rings, " << violations << " violations" << detail.str();
    return {violations == 0, msg.str()};
}

// --------------------------------------------------------------- criterion 2
// So's theorem over Z/n, n <= 12: integral sets are exactly the unions of
// gcd classes; per n the count is 2^(#divisors excluding n).
Outcome criterion_so_theorem() {
    for (std::uint64_t n = 1; n <= 12; ++n) {
        FiniteRing ring = build_ring(RingSpec{ZnSpec{n}});
        LinearFunctional psi(ring, {1 % n});
        detail::TheoremVerifier verifier(ring, psi);
        const auto classes = gcd_classes(n);
        const std::size_t c = verifier.classes().size();
        std::uint64_t integral_count = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
            std::vector<std::uint8_t> choice(c);
            for (std::size_t bit = 0; bit < c; ++bit) choice[bit] = (mask >> bit) & 1;
            auto s_set = verifier.choice_to_set(choice);
            bool integral = verifier.subset_integral(s_set);
            // Independent gcd-class route: S is a union of the G_n(d).
            std::set<std::uint64_t> members(s_set.begin(), s_set.end());
            bool is_union = true;
            for (std::uint64_t s : s_set)
                for (std::uint64_t m : classes.at(std::gcd(s, n)))
                    if (!members.count(m)) is_union = false;
            if (integral != is_union) {
                std::ostringstream msg;
                msg << "n=" << n << ": integral != union-of-gcd-classes for a subset";
                return {false, msg.str()};
            }
            if (integral) ++integral_count;
        }
        const std::uint64_t expected = std::uint64_t{1} << (divisors_of(n).size() - 1);
        if (integral_count != expected) {
            std::ostringstream msg;
            msg << "n=" << n << ": " << integral_count << " integral sets, expected " << expected;
            return {false, msg.str()};
        }
    }
    return {true, "integral sets = unions of gcd classes for n <= 12, counts match"};
}

// --------------------------------------------------------------- criterion 3
// Ramanujan-sum identity: spectrum of Gamma(Z/n, G_n(1)) at r equals c_n(r)
// exactly, for 2 <= n <= 30 (n = 1 has G_1(1) = {0}, excluded by 0 not in S).
Outcome criterion_ramanujan() {
    std::uint64_t checked = 0;
    for (std::uint64_t n = 2; n <= 30; ++n) {
        FiniteRing ring = build_ring(RingSpec{ZnSpec{n}});
        CayleyGraphSpec graph(ring, gcd_classes(n)[1]);
        auto report = spectrum(graph, LinearFunctional(ring, {1}));
        for (std::uint64_t r = 0; r < n; ++r) {
            if (!report.integer_values[r] ||
                *report.integer_values[r] != ramanujan_sum(n, r)) {
                std::ostringstream msg;
                msg << "mismatch at n=" << n << ", r=" << r;
                return {false, msg.str()};
            }
            ++checked;
        }
    }
    std::ostringstream msg;
    msg << checked << " eigenvalues equal c_n(r) exactly, 2 <= n <= 30";
    return {true, msg.str()};
}

// --------------------------------------------------------------- criterion 4
// Oracle equivalence: 100 seeded (ring, S) pairs with |R| <= 256; sorted
// exact eigenvalues (embedded) match the numeric eigensolver within 1e-6.
Outcome criterion_oracle() {
    std::mt19937_64 rng(kSampleSeed);
    const auto pool = testsupport::random_ring_pool();
    double worst = 0.0;
    std::uint64_t pairs = 0;
    while (pairs < 100) {
        const auto& named = pool[pairs % pool.size()];
        FiniteRing ring = build_ring(named.spec);
        if (ring.order() > 256) return {false, named.name + " exceeds |R| <= 256"};
        LinearFunctional psi = canonical_functional(named.spec, ring);
        CayleyGraphSpec graph(ring, testsupport::random_symmetric_set(ring, rng));
        auto exact = spectrum(graph, psi);
        std::vector<double> embedded;
        for (const auto& ev : exact.eigenvalues) {
            auto z = embed_numeric(ev);
            worst = std::max(worst, std::abs(z.imag()));
            embedded.push_back(z.real());
        }
        std::sort(embedded.begin(), embedded.end());
        auto numeric = numeric_spectrum_oracle(graph);
        for (std::size_t i = 0; i < embedded.size(); ++i)
            worst = std::max(worst, std::abs(embedded[i] - numeric[i]));
        ++pairs;
    }
    std::ostringstream msg;
    msg << pairs << " random (ring, S) pairs, max |exact - numeric| = " << worst;
    return {worst <= 1e-6, msg.str()};
}

// --------------------------------------------------------------- criterion 5
// Certification: canonical functionals are non-degenerate for every
// constructor variant; F_p[x,y]/(x^2,xy,y^2) is certified NOT symmetric by
// exhaustive search (8 functionals for p=2, 27 for p=3).
Outcome criterion_certification() {
    for (const auto& named : testsupport::constructor_battery()) {
        FiniteRing ring = build_ring(named.spec);
        if (!is_nondegenerate(canonical_functional(named.spec, ring)))
            return {false, named.name + ": canonical functional is degenerate"};
    }
    for (std::uint64_t p : {2, 3}) {
        RingSpec spec = testsupport::truncated_plane_spec(p);
        FiniteRing ring = build_ring(spec);
        auto functionals = enumerate_functionals(ring);
        if (functionals.size() != p * p * p) {
            std::ostringstream msg;
            msg << "plane p=" << p << ": expected " << p * p * p << " functionals";
            return {false, msg.str()};
        }
        auto cert = certify_symmetric(spec, ring);
        if (cert.symmetric) {
            std::ostringstream msg;
            msg << "F_" << p << "[x,y]/(x^2,xy,y^2) wrongly certified symmetric";
            return {false, msg.str()};
        }
    }
    std::ostringstream msg;
    msg << testsupport::constructor_battery().size()
        << " canonical functionals non-degenerate; planes p=2,3 not symmetric (8 and 27 "
           "functionals searched)";
    return {true, msg.str()};
}

// --------------------------------------------------------------- criterion 6
// Character-table bijectivity: r -> psi_r is a bijection onto Hom(R, Z/n)
// and |Hom(R, Z/n)| = |R| for every certified battery pair.
Outcome criterion_character_table() {
    for (const auto& named : testsupport::theorem_battery()) {
        FiniteRing ring = build_ring(named.spec);
        LinearFunctional psi = canonical_functional(named.spec, ring);
        auto functionals = enumerate_functionals(ring);
        if (functionals.size() != ring.order())
            return {false, named.name + ": |Hom| != |R|"};
        auto table = build_character_table(ring, psi);
        if (!table.bijective) return {false, named.name + ": r -> psi_r not injective"};
        std::set<std::vector<std::uint64_t>> hom;
        for (const auto& f : functionals) hom.insert(f.generator_values());
        std::set<std::vector<std::uint64_t>> image(table.rows.begin(), table.rows.end());
        if (hom != image) return {false, named.name + ": image of r -> psi_r is not all of Hom"};
    }
    return {true, "r -> psi_r bijective onto Hom(R, Z/n) on the battery, |Hom| = |R|"};
}

// --------------------------------------------------------------- criterion 7
// DFT properties on battery rings with |R| <= 64: A A* = |R| I exactly, and
// 20 random orbit-constant vectors map to integer-valued orbit-constant
// vectors.
Outcome criterion_dft() {
    std::mt19937_64 rng(kSampleSeed);
    std::uint64_t rings = 0;
    for (const auto& named : testsupport::theorem_battery()) {
        FiniteRing ring = build_ring(named.spec);
        if (ring.order() > 64) continue;
        ++rings;
        LinearFunctional psi = canonical_functional(named.spec, ring);
        DftMatrix dft(ring, psi);
        if (!dft.gram_is_order_times_identity())
            return {false, named.name + ": A A* != |R| I"};
        auto orbits = scalar_orbits(ring);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<mpz_class> v(ring.order());
            for (const auto& orbit : orbits.orbits) {
                long value = static_cast<long>(rng() % 21) - 10;
                for (std::uint64_t idx : orbit) v[idx] = value;
            }
            auto image = dft.apply(v);
            for (const auto& orbit : orbits.orbits) {
                const auto& first = image[orbit.front()];
                if (!first.as_integer())
                    return {false, named.name + ": A v not integer-valued"};
                for (std::uint64_t idx : orbit)
                    if (!(image[idx] == first))
                        return {false, named.name + ": A v not orbit-constant"};
            }
        }
    }
    std::ostringstream msg;
    msg << "A A* = |R| I and 20 projected vectors per ring on " << rings << " battery rings";
    return {true, msg.str()};
}

// --------------------------------------------------------------- criterion 8
// Paley criterion: quartic characters on Z[i]/p for p in {3,7,11} and
// quadratic characters on Z/p for p in {5,13} satisfy
// is_integral(P_chi) == induced_dirichlet_is_trivial; the Z[i]/3 quartic
// Paley graph has lambda_0 = 2 and spectrum {2 x3, -1 x6}.
Outcome criterion_paley() {
    for (std::uint64_t p : {3, 7, 11}) {
        RingSpec spec{MonogenicQuotientSpec{p, {1, 0, 1}}};
        FiniteRing ring = build_ring(spec);
        auto chi = quartic_residue_character(spec, ring);
        auto graph = paley_graph(ring, chi);
        bool integral = is_integral(graph, canonical_functional(spec, ring));
        if (integral != induced_dirichlet_is_trivial(chi, p)) {
            std::ostringstream msg;
            msg << "quartic Z[i]/" << p << ": criterion mismatch";
            return {false, msg.str()};
        }
    }
    for (std::uint64_t p : {5, 13}) {
        RingSpec spec{ZnSpec{p}};
        FiniteRing ring = build_ring(spec);
        auto chi = quadratic_character(ring);
        auto graph = paley_graph(ring, chi);
        bool integral = is_integral(graph, LinearFunctional(ring, {1}));
        if (integral != induced_dirichlet_is_trivial(chi, p)) {
            std::ostringstream msg;
            msg << "quadratic Z/" << p << ": criterion mismatch";
            return {false, msg.str()};
        }
    }
    // Exact spectrum of the Z[i]/3 quartic Paley graph.
    RingSpec gauss{MonogenicQuotientSpec{3, {1, 0, 1}}};
    FiniteRing ring = build_ring(gauss);
    auto chi = quartic_residue_character(gauss, ring);
    auto report = spectrum(paley_graph(ring, chi), canonical_functional(gauss, ring));
    if (!report.integer_values[0] || *report.integer_values[0] != 2)
        return {false, "Z[i]/3: lambda_0 != 2"};
    std::size_t twos = 0, minus_ones = 0;
    for (const auto& v : report.integer_values) {
        if (!v) return {false, "Z[i]/3: non-integral eigenvalue"};
        if (*v == 2) ++twos;
        else if (*v == -1) ++minus_ones;
        else return {false, "Z[i]/3: eigenvalue outside {2, -1}"};
    }
    if (twos != 3 || minus_ones != 6)
        return {false, "Z[i]/3: multiplicities differ from {2 x3, -1 x6}"};
    return {true, "quartic p=3,7,11 and quadratic p=5,13 match the induced-character verdict; "
                  "Z[i]/3 spectrum is {2 x3, -1 x6}"};
}

// --------------------------------------------------------------- criterion 9
// Galois/rationality coherence: 200 random root sums over n <= 24 satisfy
// as_integer <=> fixed by every sigma_a; full root sums vanish for
// 2 <= n <= 24.
Outcome criterion_galois() {
    std::mt19937_64 rng(kSampleSeed);
    std::uint64_t samples = 0, rational = 0;
    while (samples < 200) {
        std::uint64_t n = 2 + rng() % 23;
        CyclotomicBasis basis(n);
        std::vector<std::uint64_t> exps;
        for (std::uint64_t i = 0; i < rng() % (2 * n); ++i) exps.push_back(rng() % n);
        CyclotomicInt c = basis.reduce_sum(exps);
        bool fixed = true;
        for (std::uint64_t a : units_mod(n))
            if (!(basis.galois(a, c) == c)) {
                fixed = false;
                break;
            }
        if (c.as_integer().has_value() != fixed)
            return {false, "as_integer disagrees with Galois-fixedness at n=" + std::to_string(n)};
        if (fixed) ++rational;
        ++samples;
    }
    for (std::uint64_t n = 2; n <= 24; ++n) {
        std::vector<std::uint64_t> all(n);
        for (std::uint64_t e = 0; e < n; ++e) all[e] = e;
        if (!reduce_sum(n, all).is_zero())
            return {false, "full root sum nonzero at n=" + std::to_string(n)};
    }
    std::ostringstream msg;
    msg << samples << " root sums checked (" << rational
        << " rational), full sums vanish for 2 <= n <= 24";
    return {true, msg.str()};
}

// -------------------------------------------------------------- criterion 10
// CLI contract: certify/verify/census reproduce criteria 1, 2 and 5
// end-to-end from JSON spec files, with documented exit codes and
// byte-deterministic census output under --no-timestamp.
std::string file_name(const std::string& ring_name) {
    std::string out = ring_name;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return out + ".json";
}

Outcome criterion_cli() {
    clisupport::ScratchDir scratch;
    const std::string cli = clisupport::cli_path();

    // Criterion 5 via certify: battery specs exit 0, planes exit 3.
    for (const auto& named : testsupport::theorem_battery()) {
        auto path = scratch.write(file_name(named.name), spec_to_json(named.spec).dump());
        auto cert = clisupport::run_command(cli + " certify " + path);
        if (cert.exit_code != 0) return {false, "certify " + named.name + " exited nonzero"};
        if (json::parse(cert.output)["symmetric"] != true)
            return {false, "certify " + named.name + " not symmetric"};
    }
    for (std::uint64_t p : {2, 3}) {
        auto path = scratch.write("plane" + std::to_string(p) + ".json",
                                  spec_to_json(testsupport::truncated_plane_spec(p)).dump());
        auto cert = clisupport::run_command(cli + " certify " + path);
        if (cert.exit_code != 3) return {false, "certify plane exit code != 3"};
        if (json::parse(cert.output)["symmetric"] != false)
            return {false, "certify plane reported symmetric"};
    }

    // Criterion 1 via verify: every battery ring verifies consistently.
    for (const auto& named : testsupport::theorem_battery()) {
        auto path = scratch.path(file_name(named.name));
        FiniteRing ring = build_ring(named.spec);
        std::string mode = negation_classes(ring).size() <= 16
                               ? " --exhaustive"
                               : " --sample 500 --seed " + std::to_string(kSampleSeed);
        auto run = clisupport::run_command(cli + " verify " + path + mode);
        if (run.exit_code != 0) return {false, "verify " + named.name + " exited nonzero"};
        if (json::parse(run.output)["consistent"] != true)
            return {false, "verify " + named.name + " inconsistent"};
    }

    // Exit-code contract: parse error -> 1, cap -> 2.
    auto broken = scratch.write("broken.json", "{\"kind\":\"zn\"");
    if (clisupport::run_command(cli + " certify " + broken).exit_code != 1)
        return {false, "parse error did not exit 1"};
    auto big = scratch.write("zn100.json", R"({"kind":"zn","n":100})");
    if (clisupport::run_command(cli + " verify " + big + " --exhaustive").exit_code != 2)
        return {false, "exhaustive cap did not exit 2"};

    // Criterion 2 via census over Z/n, n <= 12, plus byte-determinism.
    auto out1 = scratch.path("census1.jsonl");
    auto out2 = scratch.path("census2.jsonl");
    std::string census_cmd = cli + " census --family zn --min 1 --max 12 --no-timestamp --out ";
    if (clisupport::run_command(census_cmd + out1).exit_code != 0)
        return {false, "census exited nonzero"};
    if (clisupport::run_command(census_cmd + out2).exit_code != 0)
        return {false, "census rerun exited nonzero"};
    auto bytes1 = clisupport::read_file(out1);
    if (bytes1.empty() || bytes1 != clisupport::read_file(out2))
        return {false, "census output is not byte-deterministic"};

    std::map<std::string, std::uint64_t> ring_n;
    for (std::uint64_t n = 1; n <= 12; ++n) ring_n[spec_hash(RingSpec{ZnSpec{n}})] = n;
    std::map<std::uint64_t, std::uint64_t> stable_counts;
    std::istringstream lines(bytes1);
    std::string line;
    std::uint64_t records = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("summary")) {
            if (j["summary"]["violations"] != 0) return {false, "census reported violations"};
            continue;
        }
        ++records;
        if (j["stable"] != j["integral"])
            return {false, "census record violates stable <=> integral over Z/n"};
        if (j["stable"] == true) ++stable_counts[ring_n.at(j["ring"].get<std::string>())];
    }
    for (std::uint64_t n = 1; n <= 12; ++n) {
        std::uint64_t expected = std::uint64_t{1} << (divisors_of(n).size() - 1);
        if (stable_counts[n] != expected) {
            std::ostringstream msg;
            msg << "census: n=" << n << " has " << stable_counts[n]
                << " integral sets, expected " << expected;
            return {false, msg.str()};
        }
    }
    std::ostringstream msg;
    msg << "certify/verify/census reproduce criteria 1, 2, 5 end-to-end (" << records
        << " census records, byte-identical reruns)";
    return {true, msg.str()};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "main theorem (integral <=> stable) over the battery", criterion_main_theorem},
        {2, "So's theorem specialization over Z/n", criterion_so_theorem},
        {3, "Ramanujan-sum identity for unitary Cayley graphs", criterion_ramanujan},
        {4, "exact/numeric oracle equivalence", criterion_oracle},
        {5, "symmetric-algebra certification", criterion_certification},
        {6, "character-table bijectivity", criterion_character_table},
        {7, "DFT orthogonality and projection", criterion_dft},
        {8, "Paley integrality criterion", criterion_paley},
        {9, "Galois/rationality coherence", criterion_galois},
        {10, "CLI contract", criterion_cli},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& criterion : criteria()) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.id) == selected.end())
            continue;
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id
                  << ": " << criterion.name << " -- " << outcome.detail << "\n";
        if (!outcome.pass) ++failures;
    }
    return failures;
}
