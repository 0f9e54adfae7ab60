#pragma once

#include <iosfwd>
#include <string>

namespace gpic {

struct VerifyOptions {
    unsigned seed = 0;
    long long budget = 5'000'000;
    bool color = false;
};

/// Runs every cross-verification over the corpus directory: oracle
/// equivalences, Shapiro vanishing, exactness audits, quotient-descent
/// fixtures, toric certificates.  Prints one line per named check and a
/// summary; returns the number of failed checks.  Throws CorpusMissing if
/// the directory or its manifest is absent.
int run_verification(const std::string& corpus_dir, std::ostream& out,
                     const VerifyOptions& opt = {});

} // namespace gpic
