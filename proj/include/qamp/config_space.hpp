#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qamp/errors.hpp"

namespace qamp {

/// A physical magnitude with a finite ordered set of outcome values.
/// `numeric` is optional (empty) or one number per value, e.g. spin +1/-1.
struct Magnitude {
    std::string name;
    std::vector<std::string> values;
    std::vector<double> numeric;

    bool operator==(const Magnitude&) const = default;
};

/// Maximum configuration count any exhaustive operation may touch.
/// Larger spaces must go through lazy distributions.
std::uint64_t enumeration_budget();
void set_enumeration_budget(std::uint64_t budget);

/// Throws ResourceError naming `cardinality` if it exceeds the budget.
void check_enumeration_budget(std::uint64_t cardinality);

/// An ordered family of magnitudes and its joint configuration space.
/// Configurations are packed as mixed-radix integers with the first
/// magnitude as the least significant digit; this single convention is
/// shared by every module. Copies are cheap (shared immutable data).
class MagnitudeFamily {
  public:
    MagnitudeFamily();  // the empty family, cardinality 1
    explicit MagnitudeFamily(std::vector<Magnitude> magnitudes);

    std::size_t size() const { return data_->magnitudes.size(); }
    const Magnitude& magnitude(std::size_t i) const { return data_->magnitudes[i]; }
    const std::vector<Magnitude>& magnitudes() const { return data_->magnitudes; }

    std::uint64_t cardinality() const { return data_->cardinality; }

    /// Mixed-radix stride of magnitude i in the canonical packing.
    std::uint64_t stride(std::size_t i) const { return data_->strides[i]; }

    std::uint32_t digit(std::uint64_t packed, std::size_t i) const {
        return static_cast<std::uint32_t>(
            (packed / data_->strides[i]) % data_->magnitudes[i].values.size());
    }
    std::uint64_t pack(const std::vector<std::uint32_t>& digits) const;

    /// Index of the named magnitude; throws ValidationError if absent.
    std::size_t index_of(std::string_view name) const;

    /// True when both handles denote the same configuration space
    /// (shared data or structural equality).
    bool same_family(const MagnitudeFamily& other) const;

  private:
    struct Data {
        std::vector<Magnitude> magnitudes;
        std::vector<std::uint64_t> strides;
        std::uint64_t cardinality = 1;
    };
    std::shared_ptr<const Data> data_;
};

/// One joint value assignment, i.e. a point of the family's space.
struct Configuration {
    MagnitudeFamily family;
    std::uint64_t packed = 0;

    std::uint32_t digit(std::size_t i) const { return family.digit(packed, i); }
};

/// A selection of magnitudes from a parent family, together with the
/// projection onto their joint space. The selected order defines the
/// sub-space packing (first selected = least significant).
class Subfamily {
  public:
    Subfamily(MagnitudeFamily parent, std::vector<std::size_t> selected);

    static Subfamily by_names(const MagnitudeFamily& parent,
                              const std::vector<std::string>& names);

    const MagnitudeFamily& parent() const { return parent_; }
    const std::vector<std::size_t>& selected() const { return selected_; }
    const std::vector<std::size_t>& complement() const { return complement_; }

    /// The subfamily's own configuration space.
    const MagnitudeFamily& space() const { return space_; }

    std::uint64_t fiber_size() const { return fiber_size_; }

    /// pi: parent packed index -> sub-space packed index.
    std::uint64_t project_packed(std::uint64_t parent_packed) const;

    /// Parent packed index with the selected digits taken from
    /// `sub_packed` and all complement digits zero.
    std::uint64_t embed(std::uint64_t sub_packed) const;

  private:
    MagnitudeFamily parent_;
    std::vector<std::size_t> selected_;
    std::vector<std::size_t> complement_;
    MagnitudeFamily space_;
    std::uint64_t fiber_size_ = 1;
};

/// Restriction of a configuration to a subfamily's space.
Configuration project(const Configuration& lambda, const Subfamily& sub);

/// Walks the fiber {lambda : pi(lambda) = lambda_sub} in canonical parent
/// order (the restriction of the parent enumeration order to the fiber).
class FiberWalker {
  public:
    FiberWalker(const Subfamily& sub, std::uint64_t sub_packed);

    std::uint64_t current() const { return current_; }
    bool next();  // false once the fiber is exhausted

  private:
    const Subfamily* sub_;
    std::vector<std::uint32_t> digits_;   // complement digits, odometer state
    std::vector<std::uint32_t> radices_;
    std::vector<std::uint64_t> strides_;  // parent strides of complement mags
    std::uint64_t current_;
};

/// Calls fn(packed) for every configuration in canonical order.
/// Budget-checked.
void for_each_configuration(const MagnitudeFamily& family,
                            const std::function<void(std::uint64_t)>& fn);

/// Materialized enumeration; budget-checked.
std::vector<Configuration> enumerate(const MagnitudeFamily& family);

/// Materialized fiber over lambda_sub; budget-checked.
std::vector<Configuration> fiber(const Subfamily& sub, const Configuration& lambda_sub);

}  // namespace qamp
