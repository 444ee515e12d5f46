#include "nicolas/verify.hpp"

namespace nicolas {

std::string_view lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::L1B: return "L1-b";
        case LemmaId::L1FPlus: return "L1-f-plus";
        case LemmaId::L1FMinus: return "L1-f-minus";
        case LemmaId::L2: return "L2";
        case LemmaId::L3: return "L3";
        case LemmaId::L4: return "L4";
    }
    return "?";
}

std::optional<LemmaId> lemma_from_name(std::string_view name) {
    for (const LemmaId id : all_lemmas)
        if (lemma_name(id) == name) return id;
    return std::nullopt;
}

} // namespace nicolas
