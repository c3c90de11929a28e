#include "artclust/art1.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace artclust {

namespace {

constexpr std::array<char, 8> kMagic = {'A', 'R', 'T', '1', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kFormatVersion = 1;

double bu_scale_for(const Art1Config& cfg, std::size_t template_norm) {
    return cfg.learning_param /
           (cfg.learning_param - 1.0 + static_cast<double>(template_norm));
}

template <typename T>
void write_le(std::ostream& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> buf;
    std::memcpy(buf.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(buf.begin(), buf.end());
    out.write(reinterpret_cast<const char*>(buf.data()), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> buf;
    in.read(reinterpret_cast<char*>(buf.data()), sizeof(T));
    if (!in) throw IoError("network snapshot: truncated stream");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(buf.begin(), buf.end());
    T value;
    std::memcpy(&value, buf.data(), sizeof(T));
    return value;
}

}  // namespace

MatchResult match_score(const BitVector& x, const BitVector& tmpl) {
    const std::size_t nx = x.count();
    if (nx == 0)
        throw ZeroInputError("match_score: input vector has no set bits");
    BitVector overlap = x.and_with(tmpl);
    const double match = static_cast<double>(overlap.count()) / static_cast<double>(nx);
    return {std::move(overlap), match};
}

Art1Network::Art1Network(Art1Config config, std::size_t width)
    : config_(config), width_(width) {
    if (config_.vigilance < 0.0 || config_.vigilance > 1.0)
        throw ConfigError("vigilance must lie in [0, 1]");
    if (!(config_.learning_param > 1.0))
        throw ConfigError("learning parameter must be > 1");
}

void Art1Network::check_input(const BitVector& x, std::size_t norm) const {
    if (width_ != 0 && x.width() != width_)
        throw DimensionError("input width " + std::to_string(x.width()) +
                             " does not match network width " + std::to_string(width_));
    if (norm == 0)
        throw ZeroInputError("all-zero input vector");
}

std::vector<Art1Network::Candidate> Art1Network::ranked_candidates(const BitVector& x) const {
    std::vector<Candidate> out;
    out.reserve(templates_.size());
    for (std::size_t j = 0; j < templates_.size(); ++j) {
        const std::size_t overlap = x.and_count(templates_[j]);
        out.push_back({j, overlap, bu_scale_[j] * static_cast<double>(overlap)});
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.activation != b.activation) return a.activation > b.activation;
        return a.category < b.category;
    });
    return out;
}

std::vector<double> Art1Network::activation(const BitVector& x) const {
    if (templates_.empty()) return {};
    if (x.width() != width_)
        throw DimensionError("input width " + std::to_string(x.width()) +
                             " does not match network width " + std::to_string(width_));
    std::vector<double> out(templates_.size());
    for (std::size_t j = 0; j < templates_.size(); ++j)
        out[j] = bu_scale_[j] * static_cast<double>(x.and_count(templates_[j]));
    return out;
}

std::pair<std::size_t, AssignmentTrace> Art1Network::learn_one(const BitVector& x) {
    const std::size_t nx = x.count();
    if (width_ == 0 && templates_.empty()) width_ = x.width();
    check_input(x, nx);

    AssignmentTrace trace;
    for (const Candidate& cand : ranked_candidates(x)) {
        const double match =
            static_cast<double>(cand.overlap) / static_cast<double>(nx);
        trace.tested.push_back({cand.category, cand.activation, match});
        if (match >= config_.vigilance) {
            templates_[cand.category].and_assign(x);
            bu_scale_[cand.category] =
                bu_scale_for(config_, templates_[cand.category].count());
            trace.chosen_category = cand.category;
            trace.created_new = false;
            return {cand.category, std::move(trace)};
        }
    }

    templates_.push_back(x);
    bu_scale_.push_back(bu_scale_for(config_, nx));
    trace.chosen_category = templates_.size() - 1;
    trace.created_new = true;
    return {trace.chosen_category, std::move(trace)};
}

std::vector<std::size_t> Art1Network::fit(std::span<const BitVector> samples) {
    std::vector<std::size_t> assignments;
    assignments.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        try {
            assignments.push_back(learn_one(samples[i]).first);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("sample " + std::to_string(i) + ": " + e.what());
        }
    }
    return assignments;
}

std::pair<std::size_t, AssignmentTrace> Art1Network::infer_one(const BitVector& x) const {
    if (templates_.empty())
        throw NoCategoriesError("infer_one on a network with no categories");
    const std::size_t nx = x.count();
    check_input(x, nx);

    AssignmentTrace trace;
    std::size_t best_cat = 0;
    double best_match = -1.0;
    for (const Candidate& cand : ranked_candidates(x)) {
        const double match =
            static_cast<double>(cand.overlap) / static_cast<double>(nx);
        trace.tested.push_back({cand.category, cand.activation, match});
        if (match >= config_.vigilance) {
            trace.chosen_category = cand.category;
            return {cand.category, std::move(trace)};
        }
        if (match > best_match ||
            (match == best_match && cand.category < best_cat)) {
            best_match = match;
            best_cat = cand.category;
        }
    }
    trace.chosen_category = best_cat;
    return {best_cat, std::move(trace)};
}

std::vector<double> Art1Network::bottom_up(std::size_t j) const {
    const BitVector& tmpl = templates_.at(j);
    std::vector<double> row(width_, 0.0);
    for (std::uint32_t i : tmpl.set_bits()) row[i] = bu_scale_[j];
    return row;
}

void Art1Network::save(std::ostream& out) const {
    out.write(kMagic.data(), kMagic.size());
    write_le<std::uint32_t>(out, kFormatVersion);
    write_le<std::uint32_t>(out, 0);  // reserved
    write_le<std::uint64_t>(out, width_);
    write_le<double>(out, config_.vigilance);
    write_le<double>(out, config_.learning_param);
    write_le<std::uint64_t>(out, templates_.size());
    for (const BitVector& t : templates_)
        for (std::uint64_t w : t.words()) write_le<std::uint64_t>(out, w);
    if (!out) throw IoError("network snapshot: write failed");
}

Art1Network Art1Network::load(std::istream& in) {
    std::array<char, 8> magic;
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic)
        throw IoError("network snapshot: bad magic");
    const auto version = read_le<std::uint32_t>(in);
    if (version != kFormatVersion)
        throw IoError("network snapshot: unsupported version " + std::to_string(version));
    read_le<std::uint32_t>(in);  // reserved
    const auto width = read_le<std::uint64_t>(in);
    Art1Config cfg;
    cfg.vigilance = read_le<double>(in);
    cfg.learning_param = read_le<double>(in);
    const auto n_categories = read_le<std::uint64_t>(in);

    Art1Network net(cfg, static_cast<std::size_t>(width));
    const std::size_t n_words = (width + 63) / 64;
    for (std::uint64_t j = 0; j < n_categories; ++j) {
        BitVector tmpl(static_cast<std::size_t>(width));
        for (std::size_t wi = 0; wi < n_words; ++wi) {
            const std::uint64_t w = read_le<std::uint64_t>(in);
            for (int b = 0; b < 64; ++b) {
                const std::size_t pos = wi * 64 + static_cast<std::size_t>(b);
                if (pos < width && ((w >> b) & 1u)) tmpl.set(pos);
            }
        }
        const std::size_t norm = tmpl.count();
        net.bu_scale_.push_back(bu_scale_for(cfg, norm));
        net.templates_.push_back(std::move(tmpl));
    }
    return net;
}

void Art1Network::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    save(out);
}

Art1Network Art1Network::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return load(in);
}

}  // namespace artclust
