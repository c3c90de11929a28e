#include "artclust/encoding.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "artclust/data.hpp"

namespace artclust {

namespace {

// Internal lookup key: parts escaped so the unit separator cannot be forged
// by token content.
std::string escape_part(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '\\')
            out += "\\\\";
        else if (c == '\x1f')
            out += "\\u";
        else
            out += c;
    }
    return out;
}

std::string feature_key(const std::string& cell, const std::vector<std::string>& gram) {
    std::string key = escape_part(cell);
    for (const auto& tok : gram) {
        key += '\x1f';
        key += escape_part(tok);
    }
    return key;
}

void check_boundary_collision(const SegmentedForm& form, const EncodingConfig& cfg) {
    if (!cfg.boundary_padding) return;
    for (const auto& tok : form.segments)
        if (tok == cfg.boundary_symbol)
            throw ConfigError("boundary symbol '" + cfg.boundary_symbol +
                              "' collides with a phoneme token");
}

// Escaping for the text table: backslash, tab, newline, and the token joiner.
std::string escape_field(const std::string& s, bool is_token) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '|':
                if (is_token) { out += "\\p"; break; }
                [[fallthrough]];
            default: out += c;
        }
    }
    return out;
}

std::string unescape_field(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            ++i;
            switch (s[i]) {
                case '\\': out += '\\'; break;
                case 't': out += '\t'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 'p': out += '|'; break;
                default: out += s[i];
            }
        } else {
            out += s[i];
        }
    }
    return out;
}

std::vector<std::string> split_tokens(const std::string& joined) {
    std::vector<std::string> out;
    std::string cur;
    bool escaped = false;
    for (char c : joined) {
        if (escaped) {
            cur += '\\';
            cur += c;
            escaped = false;
        } else if (c == '\\') {
            escaped = true;
        } else if (c == '|') {
            out.push_back(unescape_field(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (escaped) cur += '\\';
    out.push_back(unescape_field(cur));
    return out;
}

}  // namespace

std::vector<std::vector<std::string>> extract_ngrams(const SegmentedForm& form,
                                                     const EncodingConfig& config) {
    if (config.n < 1) throw ConfigError("n-gram length must be >= 1");
    check_boundary_collision(form, config);

    std::vector<std::string> padded;
    padded.reserve(form.segments.size() + 2);
    if (config.boundary_padding) padded.push_back(config.boundary_symbol);
    padded.insert(padded.end(), form.segments.begin(), form.segments.end());
    if (config.boundary_padding) padded.push_back(config.boundary_symbol);

    std::vector<std::vector<std::string>> out;
    const std::size_t n = static_cast<std::size_t>(config.n);
    if (padded.size() < n) return out;

    std::set<std::vector<std::string>> seen;
    for (std::size_t i = 0; i + n <= padded.size(); ++i) {
        std::vector<std::string> window(padded.begin() + static_cast<std::ptrdiff_t>(i),
                                        padded.begin() + static_cast<std::ptrdiff_t>(i + n));
        if (seen.insert(window).second) out.push_back(std::move(window));
    }
    return out;
}

void FeatureSpace::push_column(FeatureColumn col) {
    index_.emplace(feature_key(col.cell, col.gram), static_cast<int>(columns_.size()));
    columns_.push_back(std::move(col));
}

int FeatureSpace::find(const std::string& cell, const std::vector<std::string>& gram) const {
    auto it = index_.find(feature_key(cell, gram));
    return it == index_.end() ? -1 : it->second;
}

FeatureSpace build_feature_space(std::span<const ParadigmSample> samples,
                                 std::span<const std::string> cell_order,
                                 const EncodingConfig& config, ColumnOrder order) {
    if (samples.empty())
        throw DataError("cannot build a feature space from zero samples");

    FeatureSpace space;
    space.config_ = config;

    const bool concat = config.mode == NgramMode::concat;
    std::vector<FeatureColumn> cols;
    std::set<std::pair<std::string, std::vector<std::string>>> present;

    auto add = [&](const std::string& cell, std::vector<std::string> gram) {
        if (present.emplace(cell, gram).second)
            cols.push_back({cell, std::move(gram)});
    };

    if (concat) {
        // cell-major so the observation order is (cell order, first seen)
        for (const std::string& cell : cell_order) {
            for (const ParadigmSample& s : samples) {
                const SegmentedForm* form = s.find_form(cell);
                if (!form) continue;
                for (auto& gram : extract_ngrams(*form, config)) add(cell, std::move(gram));
            }
        }
    } else {
        for (const ParadigmSample& s : samples) {
            for (const std::string& cell : cell_order) {
                const SegmentedForm* form = s.find_form(cell);
                if (!form) continue;
                for (auto& gram : extract_ngrams(*form, config)) add("", std::move(gram));
            }
        }
    }

    if (order == ColumnOrder::sorted) {
        std::map<std::string, std::size_t> cell_rank;
        for (std::size_t i = 0; i < cell_order.size(); ++i)
            cell_rank.emplace(cell_order[i], i);
        std::sort(cols.begin(), cols.end(),
                  [&](const FeatureColumn& a, const FeatureColumn& b) {
                      const std::size_t ra = concat ? cell_rank.at(a.cell) : 0;
                      const std::size_t rb = concat ? cell_rank.at(b.cell) : 0;
                      if (ra != rb) return ra < rb;
                      return a.gram < b.gram;
                  });
    }
    for (auto& col : cols) space.push_column(std::move(col));
    return space;
}

BitVector encode(const ParadigmSample& sample, const FeatureSpace& space) {
    const EncodingConfig& cfg = space.config();
    BitVector bits(space.width());
    const bool concat = cfg.mode == NgramMode::concat;
    for (const auto& [cell, form] : sample.forms) {
        for (const auto& gram : extract_ngrams(form, cfg)) {
            const int col = space.find(concat ? cell : std::string(), gram);
            if (col >= 0) bits.set(static_cast<std::size_t>(col));
        }
    }
    return bits;
}

void FeatureSpace::save(std::ostream& out) const {
    out << "# artclust feature space v1\n";
    out << "# n=" << config_.n << " padding=" << (config_.boundary_padding ? 1 : 0)
        << " boundary=" << escape_field(config_.boundary_symbol, true)
        << " mode=" << (config_.mode == NgramMode::concat ? "concat" : "set")
        << " columns=" << columns_.size() << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << i << '\t' << escape_field(columns_[i].cell, false) << '\t';
        for (std::size_t t = 0; t < columns_[i].gram.size(); ++t) {
            if (t) out << '|';
            out << escape_field(columns_[i].gram[t], true);
        }
        out << '\n';
    }
    if (!out) throw IoError("feature space: write failed");
}

FeatureSpace FeatureSpace::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# artclust feature space", 0) != 0)
        throw IoError("feature space: bad header");
    if (!std::getline(in, line))
        throw IoError("feature space: missing config line");

    FeatureSpace space;
    {
        std::istringstream cfg_line(line);
        std::string tok;
        cfg_line >> tok;  // '#'
        while (cfg_line >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "n")
                space.config_.n = std::stoi(val);
            else if (key == "padding")
                space.config_.boundary_padding = val == "1";
            else if (key == "boundary")
                space.config_.boundary_symbol = unescape_field(val);
            else if (key == "mode")
                space.config_.mode = val == "set" ? NgramMode::set : NgramMode::concat;
        }
    }

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto t1 = line.find('\t');
        const auto t2 = line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw IoError("feature space: malformed column line: " + line);
        FeatureColumn col;
        col.cell = unescape_field(line.substr(t1 + 1, t2 - t1 - 1));
        col.gram = split_tokens(line.substr(t2 + 1));
        space.push_column(std::move(col));
    }
    return space;
}

void FeatureSpace::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    save(out);
}

FeatureSpace FeatureSpace::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    return load(in);
}

}  // namespace artclust
