#include "lexsub/freq_table.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "lexsub/errors.hpp"
#include "lexsub/util.hpp"

namespace lexsub {

FreqTable FreqTable::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("freq table: cannot open " + path);
    FreqTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string word;
        double zipf;
        if (!(row >> word >> zipf))
            throw DataError("freq table: malformed line " + std::to_string(lineno) +
                            " in " + path);
        table.set(word, zipf);
    }
    return table;
}

void FreqTable::set(const std::string& word, double zipf) {
    table_[fold_case(word)] = zipf;
}

std::optional<double> FreqTable::zipf(const std::string& word) const {
    auto it = table_.find(fold_case(word));
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

double FreqTable::zipf_or_lowest(const std::string& word) const {
    const auto z = zipf(word);
    return z ? *z : -std::numeric_limits<double>::infinity();
}

}  // namespace lexsub
