#include "bdlab/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace bdlab {

void write_checkpoint_file(const std::string& path, const ExperimentCheckpoint& cp) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("checkpoint: cannot open " + tmp + " for writing");
        out << "config_fingerprint: " << cp.config_fingerprint << "\n";
        out << "k: " << cp.k << "\n";
        out << "next_j: " << cp.next_j << "\n";
        out << "precision_digits: " << cp.precision_digits << "\n";
        out << "binomial_state: " << cp.binomial_state << "\n";
        out << "partial_sum: " << cp.partial_sum << "\n";
        out << "complete: " << (cp.complete ? 1 : 0) << "\n";
        out << "end: 1\n";
        if (!out) throw Error("checkpoint: short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("checkpoint: rename to " + path + " failed");
}

ExperimentCheckpoint read_checkpoint_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("checkpoint: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto colon = line.find(": ");
        if (colon == std::string::npos)
            throw FormatError("checkpoint: malformed line", line_no);
        kv[line.substr(0, colon)] = line.substr(colon + 2);
    }
    for (const char* key :
         {"config_fingerprint", "k", "next_j", "precision_digits", "binomial_state",
          "partial_sum", "complete", "end"})
        if (kv.find(key) == kv.end())
            throw FormatError(std::string("checkpoint: truncated file, missing '") + key + "'",
                              line_no);
    ExperimentCheckpoint cp;
    cp.config_fingerprint = kv["config_fingerprint"];
    cp.k = std::stol(kv["k"]);
    cp.next_j = std::stol(kv["next_j"]);
    cp.precision_digits = std::stol(kv["precision_digits"]);
    cp.binomial_state = kv["binomial_state"];
    cp.partial_sum = kv["partial_sum"];
    cp.complete = kv["complete"] == "1";
    return cp;
}

ExperimentCheckpoint checkpoint_from_state(const GenericState& st,
                                           const std::string& fingerprint, bool complete) {
    ExperimentCheckpoint cp;
    cp.config_fingerprint = fingerprint;
    cp.k = st.k;
    cp.next_j = st.next_j;
    cp.precision_digits = st.working_digits;
    cp.partial_sum = st.partial_sum.str();
    cp.binomial_state = st.binomial.get_str();
    cp.complete = complete;
    return cp;
}

GenericState state_from_checkpoint(const ExperimentCheckpoint& cp) {
    GenericState st;
    st.k = cp.k;
    st.next_j = cp.next_j;
    st.working_digits = cp.precision_digits;
    st.partial_sum = Real::parse(cp.partial_sum, digits_to_bits(cp.precision_digits));
    if (mpz_set_str(st.binomial.get_mpz_t(), cp.binomial_state.c_str(), 10) != 0)
        throw FormatError("checkpoint: bad binomial_state integer", 0);
    return st;
}

}  // namespace bdlab
