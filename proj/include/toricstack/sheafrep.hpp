#pragma once

#include "toricstack/chartglue.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace ts {

// Multiset of fine-grading characters (normalized DG_sigma coordinates).
using CharMultiset = std::map<IntVec, Int>;

// Finite window of a torsion-free module on chart sigma, indexed by chart
// degrees c (exponents of the chart coordinates, in cone order). Each summand
// carries the box element it was generated from.
struct SFamilyWindow {
    struct Summand {
        IntVec label;                        // box element point
        std::map<IntVec, CharMultiset> dims; // only nonzero points are stored
    };
    std::size_t cone = 0;
    IntVec lo, hi;
    IntVec saturation;  // per axis; values are constant (up to eta shifts) from here on
    std::vector<Summand> summands;

    bool contains(const IntVec& c) const;
    CharMultiset at(const IntVec& c) const;  // merged over summands, inside the window
    Int dim(const IntVec& c) const;
};

// Value at an arbitrary degree, extending past hi by saturation. Throws when the
// read is below the window or past hi on an unsaturated axis.
CharMultiset read_extended(const FinAbGroup& DG, const SFamilyWindow& w, const IntVec& c);

std::map<IntVec, SFamilyWindow> box_decompose(const SFamilyWindow& w);
SFamilyWindow direct_sum(const SFamilyWindow& a, const SFamilyWindow& b);

struct LineBundleChartData {
    BoxElement box;
    IntVec A;     // generator position in box coordinates: slice = M_sigma (q + A)
    IntVec fine;  // fine grading of the generator in DG_sigma
};
IntVec cone_slice(const StackyFan& fan, const IntVec& B, std::size_t cone);
LineBundleChartData line_bundle_chart_data(const StackyFan& fan, const IntVec& B, std::size_t cone);
SFamilyWindow line_bundle_window(const StackyFan& fan, const IntVec& B, std::size_t cone,
                                 const IntVec& lo, const IntVec& hi);

struct ProjPoint {
    Int x = 1, y = 0;
    long generic_id = -1;  // >= 0 for a symbolic generic point, distinct per id
    bool operator==(const ProjPoint&) const = default;
    bool operator<(const ProjPoint& o) const {
        return std::tie(generic_id, x, y) < std::tie(o.generic_id, o.x, o.y);
    }
};
ProjPoint proj_point(const Int& x, const Int& y);  // normalized, throws on (0,0)
ProjPoint generic_point(long id);

struct Rank2ReflexiveData {
    IntVec A, lambda;
    std::vector<ProjPoint> p;
};
void check_rank2(const StackyFan& fan, const Rank2ReflexiveData& data);

struct Rank1TFData {
    IntVec B;
    std::vector<std::vector<IntVec>> staircases;  // per top cone, offsets from the generator
};
void check_rank1(const StackyFan& fan, const Rank1TFData& data);

SFamilyWindow rank2_window(const StackyFan& fan, const Rank2ReflexiveData& data, std::size_t cone,
                           const IntVec& lo, const IntVec& hi);
SFamilyWindow rank1_window(const StackyFan& fan, const Rank1TFData& data, std::size_t cone,
                           const IntVec& lo, const IntVec& hi);

struct SheafData {
    std::string kind;  // line_bundle, rank2_reflexive, rank1_tf
    IntVec B;
    Rank2ReflexiveData rank2;
    Rank1TFData rank1;
};
SheafData parse_sheaf_json(const std::string& text);
SheafData load_sheaf(const std::string& path);

// Generator and saturation corners of the sheaf on a chart; the default window
// spans [generator - 1, saturation + 1].
IntVec sheaf_generator(const StackyFan& fan, const SheafData& s, std::size_t cone);
IntVec sheaf_saturation(const StackyFan& fan, const SheafData& s, std::size_t cone);
SFamilyWindow sheaf_window(const StackyFan& fan, const SheafData& s, std::size_t cone,
                           std::optional<std::pair<IntVec, IntVec>> window = std::nullopt);
std::vector<SFamilyWindow> sheaf_windows(const StackyFan& fan, const SheafData& s,
                                         std::optional<std::pair<IntVec, IntVec>> window = std::nullopt);

struct GlueReport {
    bool ok = true;
    std::size_t points_checked = 0;
    std::optional<IntVec> first_failure;  // W-degree (aligned order)
    std::string detail;
};
// Compares the pullbacks of charts i and j to the overlap chart, degree by degree,
// as multisets of X(K) characters. Shared coordinates range over the given box
// (aligned order) or, by default, over both windows; lambda coordinates over a
// fundamental domain.
GlueReport glue_check(const StackyFan& fan, const std::vector<SFamilyWindow>& windows, std::size_t i,
                      std::size_t j, std::optional<std::pair<IntVec, IntVec>> shared_box = std::nullopt);

struct CharacteristicFunction {
    struct Chart {
        std::size_t cone = 0;
        IntVec label, lo, hi, saturation;
        std::map<IntVec, Int> dims;  // nonzero only
        bool operator==(const Chart&) const = default;
    };
    std::vector<Chart> charts;
    bool operator==(const CharacteristicFunction&) const = default;
};
CharacteristicFunction characteristic_function(const StackyFan& fan, const std::vector<SFamilyWindow>& windows);
// Translates every chart by one character of T so that chart 0's saturation corner
// lands in the box.
CharacteristicFunction frame(const StackyFan& fan, const CharacteristicFunction& cf);

struct DecomposabilityVerdict {
    bool decomposable = false;
    std::vector<ProjPoint> witness;  // splitting basis when decomposable
};
DecomposabilityVerdict rank2_decomposable(const Rank2ReflexiveData& data);

}  // namespace ts
