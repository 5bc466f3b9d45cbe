#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsim {

/// Boolean function {0,1}^n -> {0,1} as a packed bit array of length 2^n,
/// indexed by the integer value of the argument. This is the oracle
/// representation: algorithms only query it through gates built from it.
class TruthTable {
  public:
    TruthTable(int n_inputs, bool fill = false);

    static TruthTable constant(int n_inputs, bool value) { return TruthTable(n_inputs, value); }

    /// Text format: first line `n=<int>`, second line 2^n characters of
    /// {0,1}, index ascending.
    static TruthTable parse(const std::string& text);
    std::string serialize() const;

    int n_inputs() const { return n_inputs_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_inputs_; }

    bool value(std::uint64_t x) const {
        return (words_[x >> 6] >> (x & 63)) & 1;
    }
    void set(std::uint64_t x, bool v);

    /// Number of arguments mapped to 1.
    std::uint64_t count_ones() const;

    bool is_constant() const;
    /// Exactly half the arguments map to 1.
    bool is_balanced() const;

  private:
    int n_inputs_;
    std::vector<std::uint64_t> words_;
};

} // namespace qsim
