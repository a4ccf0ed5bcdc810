#pragma once
#include "barcalc/bar.hpp"
#include "barcalc/cup.hpp"
#include "barcalc/dg.hpp"

#include <json.hpp>

#include <string>

namespace barcalc {

/// Parsed command invocation. Defaults are chosen so that any single command
/// can run with only its essential flags set.
struct RunConfig {
    std::string command;
    std::string ring = "Z/2";
    long n = 1, m = 0;
    std::string coeff = "Z";
    long max_degree = 3;
    long truncation = 0; // 0 = max_degree + 1
    long cap = 0;        // 0 = simplex_cap()
    std::string output;
    unsigned long seed = 1;
    long samples = 2000;
    // cup-table
    std::string pair = "1,1:1,1";
    bool verify_axioms = false;
    long nmax = 1, pmax = 2;
    // hochschild
    std::string algebra;
    // verify
    std::string suite = "all";
    bool fault_injection = false;

    long trunc() const { return truncation > 0 ? truncation : max_degree + 1; }
    long budget() const { return cap > 0 ? cap : simplex_cap(); }
    void validate() const; // throws ParseError on out-of-range values
};

struct ResultDocument {
    nlohmann::json doc;

    /// Canonical serialized bytes; byte-identical across reruns with the same
    /// config and seed, except for the timings field.
    std::string text() const;
    bool ok() const; // results.ok, true when the command has no pass/fail notion
};

ResultDocument cmd_em_homotopy(const RunConfig& c);
ResultDocument cmd_em_homology(const RunConfig& c);
ResultDocument cmd_cup_table(const RunConfig& c);
ResultDocument cmd_hochschild(const RunConfig& c);
ResultDocument cmd_export_complex(const RunConfig& c);
ResultDocument cmd_verify(const RunConfig& c);
ResultDocument run_command(const RunConfig& c);

/// Canonical chain-complex JSON: {ring, degrees, differentials}, entries
/// sorted by (from, row, col); byte-identical across reruns.
std::string export_complex_json(const ChainComplex& c);
ChainComplex import_complex_json(const std::string& text);

/// Full front end. Exit status: 0 success, 2 invalid input, 3 resource cap,
/// 4 verification failure.
int cli_main(int argc, char** argv);

} // namespace barcalc
