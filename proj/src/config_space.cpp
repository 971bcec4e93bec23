#include "qamp/config_space.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_set>

namespace qamp {

namespace {

std::atomic<std::uint64_t> g_budget{std::uint64_t{1} << 24};

// Multiplication guard: configuration spaces beyond 2^62 have no
// representable packing here and no exhaustive use either.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    constexpr std::uint64_t kCap = std::uint64_t{1} << 62;
    if (b != 0 && a > kCap / b)
        throw ResourceError("configuration space cardinality exceeds 2^62");
    return a * b;
}

}  // namespace

std::uint64_t enumeration_budget() { return g_budget.load(); }

void set_enumeration_budget(std::uint64_t budget) { g_budget.store(budget); }

void check_enumeration_budget(std::uint64_t cardinality) {
    const std::uint64_t budget = g_budget.load();
    if (cardinality > budget)
        throw ResourceError("enumeration of " + std::to_string(cardinality) +
                            " configurations exceeds the budget of " +
                            std::to_string(budget));
}

MagnitudeFamily::MagnitudeFamily() : MagnitudeFamily(std::vector<Magnitude>{}) {}

MagnitudeFamily::MagnitudeFamily(std::vector<Magnitude> magnitudes) {
    auto data = std::make_shared<Data>();
    std::unordered_set<std::string> names;
    for (const auto& m : magnitudes) {
        if (m.values.size() < 2)
            throw ValidationError("magnitude '" + m.name + "' needs at least 2 values");
        if (!m.numeric.empty() && m.numeric.size() != m.values.size())
            throw ValidationError("magnitude '" + m.name +
                                  "': numeric values must match value count");
        std::unordered_set<std::string> labels(m.values.begin(), m.values.end());
        if (labels.size() != m.values.size())
            throw ValidationError("magnitude '" + m.name + "' has duplicate value labels");
        if (!names.insert(m.name).second)
            throw ValidationError("duplicate magnitude name '" + m.name + "'");
    }
    data->strides.reserve(magnitudes.size());
    for (const auto& m : magnitudes) {
        data->strides.push_back(data->cardinality);
        data->cardinality = checked_mul(data->cardinality, m.values.size());
    }
    data->magnitudes = std::move(magnitudes);
    data_ = std::move(data);
}

std::uint64_t MagnitudeFamily::pack(const std::vector<std::uint32_t>& digits) const {
    if (digits.size() != size())
        throw ValidationError("pack: digit count does not match family size");
    std::uint64_t packed = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] >= data_->magnitudes[i].values.size())
            throw ValidationError("pack: digit out of range for magnitude '" +
                                  data_->magnitudes[i].name + "'");
        packed += digits[i] * data_->strides[i];
    }
    return packed;
}

std::size_t MagnitudeFamily::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < size(); ++i)
        if (data_->magnitudes[i].name == name) return i;
    throw ValidationError("unknown magnitude '" + std::string(name) + "'");
}

bool MagnitudeFamily::same_family(const MagnitudeFamily& other) const {
    if (data_ == other.data_) return true;
    return data_->magnitudes == other.data_->magnitudes;
}

Subfamily::Subfamily(MagnitudeFamily parent, std::vector<std::size_t> selected)
    : parent_(std::move(parent)), selected_(std::move(selected)) {
    std::unordered_set<std::size_t> seen;
    std::vector<Magnitude> sub_mags;
    sub_mags.reserve(selected_.size());
    for (std::size_t i : selected_) {
        if (i >= parent_.size())
            throw ValidationError("subfamily index out of range");
        if (!seen.insert(i).second)
            throw ValidationError("subfamily indices must be distinct");
        sub_mags.push_back(parent_.magnitude(i));
    }
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (!seen.count(i)) complement_.push_back(i);
    space_ = MagnitudeFamily(std::move(sub_mags));
    fiber_size_ = parent_.cardinality() / space_.cardinality();
}

Subfamily Subfamily::by_names(const MagnitudeFamily& parent,
                              const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const auto& n : names) idx.push_back(parent.index_of(n));
    return Subfamily(parent, std::move(idx));
}

std::uint64_t Subfamily::project_packed(std::uint64_t parent_packed) const {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < selected_.size(); ++k)
        out += static_cast<std::uint64_t>(parent_.digit(parent_packed, selected_[k])) *
               space_.stride(k);
    return out;
}

std::uint64_t Subfamily::embed(std::uint64_t sub_packed) const {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < selected_.size(); ++k)
        out += static_cast<std::uint64_t>(space_.digit(sub_packed, k)) *
               parent_.stride(selected_[k]);
    return out;
}

Configuration project(const Configuration& lambda, const Subfamily& sub) {
    if (!lambda.family.same_family(sub.parent()))
        throw ValidationError("project: configuration does not belong to the "
                              "subfamily's parent family");
    return {sub.space(), sub.project_packed(lambda.packed)};
}

FiberWalker::FiberWalker(const Subfamily& sub, std::uint64_t sub_packed)
    : sub_(&sub), current_(sub.embed(sub_packed)) {
    const auto& comp = sub.complement();
    digits_.assign(comp.size(), 0);
    radices_.reserve(comp.size());
    strides_.reserve(comp.size());
    for (std::size_t i : comp) {
        radices_.push_back(
            static_cast<std::uint32_t>(sub.parent().magnitude(i).values.size()));
        strides_.push_back(sub.parent().stride(i));
    }
}

bool FiberWalker::next() {
    for (std::size_t k = 0; k < digits_.size(); ++k) {
        if (++digits_[k] < radices_[k]) {
            current_ += strides_[k];
            return true;
        }
        current_ -= static_cast<std::uint64_t>(radices_[k] - 1) * strides_[k];
        digits_[k] = 0;
    }
    return false;
}

void for_each_configuration(const MagnitudeFamily& family,
                            const std::function<void(std::uint64_t)>& fn) {
    const std::uint64_t n = family.cardinality();
    check_enumeration_budget(n);
    for (std::uint64_t packed = 0; packed < n; ++packed) fn(packed);
}

std::vector<Configuration> enumerate(const MagnitudeFamily& family) {
    std::vector<Configuration> out;
    out.reserve(family.cardinality() <= (std::uint64_t{1} << 20)
                    ? family.cardinality()
                    : 0);
    for_each_configuration(family,
                           [&](std::uint64_t p) { out.push_back({family, p}); });
    return out;
}

std::vector<Configuration> fiber(const Subfamily& sub, const Configuration& lambda_sub) {
    if (!lambda_sub.family.same_family(sub.space()))
        throw ValidationError("fiber: configuration does not live in the "
                              "subfamily's space");
    check_enumeration_budget(sub.fiber_size());
    std::vector<Configuration> out;
    out.reserve(sub.fiber_size());
    FiberWalker walk(sub, lambda_sub.packed);
    do {
        out.push_back({sub.parent(), walk.current()});
    } while (walk.next());
    return out;
}

}  // namespace qamp
