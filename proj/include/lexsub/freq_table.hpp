#pragma once

#include <optional>
#include <string>
#include <unordered_map>

namespace lexsub {

/// Word -> Zipf frequency lookup, loaded from a two-column UTF-8 text file
/// (word, whitespace, frequency; one entry per line, '#' comments allowed).
class FreqTable {
  public:
    FreqTable() = default;
    static FreqTable from_file(const std::string& path);

    void set(const std::string& word, double zipf);
    std::optional<double> zipf(const std::string& word) const;

    /// Zipf value or -infinity when absent; handy as a sort key.
    double zipf_or_lowest(const std::string& word) const;

    std::size_t size() const { return table_.size(); }

  private:
    std::unordered_map<std::string, double> table_;
};

}  // namespace lexsub
