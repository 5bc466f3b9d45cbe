#include "qsim/truth_table.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "qsim/config.hpp"

namespace qsim {

TruthTable::TruthTable(int n_inputs, bool fill) : n_inputs_(n_inputs) {
    if (n_inputs_ < 1) {
        throw std::invalid_argument("truth table needs at least one input bit");
    }
    if (n_inputs_ > limits().max_oracle_inputs) {
        throw std::invalid_argument("truth table of " + std::to_string(n_inputs_) +
                                    " inputs exceeds the configured maximum of " +
                                    std::to_string(limits().max_oracle_inputs));
    }
    const std::uint64_t n_words = (size() + 63) / 64;
    words_.assign(n_words, fill ? ~std::uint64_t{0} : 0);
    if (fill && (size() & 63)) {
        words_.back() = (std::uint64_t{1} << (size() & 63)) - 1;
    }
}

TruthTable TruthTable::parse(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header) || header.rfind("n=", 0) != 0) {
        throw std::invalid_argument("truth table must start with a `n=<int>` line");
    }
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(header.substr(2), &used);
        if (used != header.size() - 2) {
            throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed truth table header: " + header);
    }
    std::string bits;
    if (!std::getline(is, bits)) {
        throw std::invalid_argument("truth table is missing its bit line");
    }
    if (!bits.empty() && bits.back() == '\r') {
        bits.pop_back();
    }
    TruthTable table(n);
    if (bits.size() != table.size()) {
        throw std::invalid_argument("truth table bit line must have exactly 2^n characters");
    }
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        if (bits[x] == '1') {
            table.set(x, true);
        } else if (bits[x] != '0') {
            throw std::invalid_argument("truth table bits must be 0 or 1");
        }
    }
    return table;
}

std::string TruthTable::serialize() const {
    std::string out = "n=" + std::to_string(n_inputs_) + "\n";
    out.reserve(out.size() + size() + 1);
    for (std::uint64_t x = 0; x < size(); ++x) {
        out += value(x) ? '1' : '0';
    }
    out += '\n';
    return out;
}

void TruthTable::set(std::uint64_t x, bool v) {
    if (x >= size()) {
        throw std::invalid_argument("truth table index out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (v) {
        words_[x >> 6] |= bit;
    } else {
        words_[x >> 6] &= ~bit;
    }
}

std::uint64_t TruthTable::count_ones() const {
    std::uint64_t ones = 0;
    for (std::uint64_t w : words_) {
        ones += static_cast<std::uint64_t>(std::popcount(w));
    }
    return ones;
}

bool TruthTable::is_constant() const {
    const std::uint64_t ones = count_ones();
    return ones == 0 || ones == size();
}

bool TruthTable::is_balanced() const {
    return count_ones() * 2 == size();
}

} // namespace qsim
