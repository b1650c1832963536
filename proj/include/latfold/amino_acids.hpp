#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latfold/errors.hpp"

namespace latfold {

enum class RGroupProperty { non_polar, polar, negative, positive, ring };
enum class SynthetaseClass { I, II };

inline std::string to_string(RGroupProperty p) {
    switch (p) {
        case RGroupProperty::non_polar: return "non-polar";
        case RGroupProperty::polar: return "polar";
        case RGroupProperty::negative: return "negative";
        case RGroupProperty::positive: return "positive";
        default: return "ring";
    }
}

inline std::string to_string(SynthetaseClass c) {
    return c == SynthetaseClass::I ? "I" : "II";
}

struct AminoAcidRecord {
    std::string code3;
    std::string name;
    RGroupProperty property;
    int weight;  // molecular weight, Daltons
    SynthetaseClass synthetase_class;
};

// The 20 naturally occurring amino acids with their R-group property,
// molecular weight and aminoacyl-tRNA synthetase class.
inline const std::array<AminoAcidRecord, 20>& amino_acid_table() {
    using P = RGroupProperty;
    using C = SynthetaseClass;
    static const std::array<AminoAcidRecord, 20> table = {{
        {"Gly", "Glycine", P::non_polar, 75, C::II},
        {"Ala", "Alanine", P::non_polar, 89, C::II},
        {"Pro", "Proline", P::non_polar, 115, C::II},
        {"Val", "Valine", P::non_polar, 117, C::I},
        {"Leu", "Leucine", P::non_polar, 131, C::I},
        {"Ile", "Isoleucine", P::non_polar, 131, C::I},
        {"Ser", "Serine", P::polar, 105, C::II},
        {"Thr", "Threonine", P::polar, 119, C::II},
        {"Asn", "Asparagine", P::polar, 132, C::II},
        {"Cys", "Cysteine", P::polar, 121, C::I},
        {"Met", "Methionine", P::polar, 149, C::I},
        {"Gln", "Glutamine", P::polar, 146, C::I},
        {"Asp", "Aspartate", P::negative, 133, C::II},
        {"Glu", "Glutamate", P::negative, 147, C::I},
        {"Lys", "Lysine", P::positive, 146, C::II},
        {"Arg", "Arginine", P::positive, 174, C::I},
        {"His", "Histidine", P::ring, 155, C::II},
        {"Phe", "Phenylalanine", P::ring, 165, C::II},
        {"Tyr", "Tyrosine", P::ring, 181, C::I},
        {"Trp", "Tryptophan", P::ring, 204, C::I},
    }};
    return table;
}

inline std::string normalize_code3(const std::string& code) {
    if (code.size() != 3) return code;
    std::string s = code;
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    s[1] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[1])));
    s[2] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[2])));
    return s;
}

inline const AminoAcidRecord& lookup(const std::string& code3) {
    const std::string key = normalize_code3(code3);
    for (const AminoAcidRecord& r : amino_acid_table()) {
        if (r.code3 == key) return r;
    }
    throw lookup_error("unknown amino acid: " + code3);
}

// One-letter to three-letter code, for sequence input.
inline const std::string& code3_of_letter(char letter) {
    static const std::map<char, std::string> m = {
        {'G', "Gly"}, {'A', "Ala"}, {'P', "Pro"}, {'V', "Val"}, {'L', "Leu"},
        {'I', "Ile"}, {'S', "Ser"}, {'T', "Thr"}, {'N', "Asn"}, {'C', "Cys"},
        {'M', "Met"}, {'Q', "Gln"}, {'D', "Asp"}, {'E', "Glu"}, {'K', "Lys"},
        {'R', "Arg"}, {'H', "His"}, {'F', "Phe"}, {'Y', "Tyr"}, {'W', "Trp"},
    };
    auto it = m.find(static_cast<char>(std::toupper(static_cast<unsigned char>(letter))));
    if (it == m.end()) throw lookup_error(std::string("unknown amino-acid letter: ") + letter);
    return it->second;
}

// Class I and class II members, in table order. Two classes of 10 each.
inline std::pair<std::vector<AminoAcidRecord>, std::vector<AminoAcidRecord>> class_partition() {
    std::pair<std::vector<AminoAcidRecord>, std::vector<AminoAcidRecord>> out;
    for (const AminoAcidRecord& r : amino_acid_table()) {
        (r.synthetase_class == SynthetaseClass::I ? out.first : out.second).push_back(r);
    }
    return out;
}

// Per-property (class I count, class II count); the classes divide every
// property equally.
inline std::map<RGroupProperty, std::pair<int, int>> property_balance() {
    std::map<RGroupProperty, std::pair<int, int>> counts;
    for (const AminoAcidRecord& r : amino_acid_table()) {
        auto& c = counts[r.property];
        (r.synthetase_class == SynthetaseClass::I ? c.first : c.second)++;
    }
    return counts;
}

// Per-property mean molecular weight by class. The heavier members of
// each property sit in class I; that holds at the mean (element-wise it
// fails for polar: Asn 132 > Cys 121).
inline std::map<RGroupProperty, std::pair<double, double>> weight_ordering() {
    std::map<RGroupProperty, std::pair<double, int>> sum1;
    std::map<RGroupProperty, std::pair<double, int>> sum2;
    for (const AminoAcidRecord& r : amino_acid_table()) {
        auto& s = r.synthetase_class == SynthetaseClass::I ? sum1[r.property] : sum2[r.property];
        s.first += r.weight;
        s.second++;
    }
    std::map<RGroupProperty, std::pair<double, double>> means;
    for (const auto& [prop, s] : sum1)
        means[prop].first = s.first / s.second;
    for (const auto& [prop, s] : sum2)
        means[prop].second = s.first / s.second;
    return means;
}

// CSV dump matching the checked-in fixture byte for byte.
inline std::string amino_acid_csv() {
    std::string out = "code3,name,property,weight,class\n";
    for (const AminoAcidRecord& r : amino_acid_table()) {
        out += r.code3 + "," + r.name + "," + to_string(r.property) + "," +
               std::to_string(r.weight) + "," + to_string(r.synthetase_class) + "\n";
    }
    return out;
}

}  // namespace latfold
