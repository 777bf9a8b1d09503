#include "json.hpp"
#include "tenv/engine/engine.hpp"

namespace tenv {

std::string MultiplicityTable::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json row;
    row["object_class"] = e.object_class;
    row["character_index"] = e.label.chi;
    row["character"] = e.character;
    row["character_degree"] = e.character_degree.get_num().get_si();
    row["multiplicity"] = e.multiplicity.get_si();
    j.push_back(row);
  }
  return j.dump();
}

}  // namespace tenv
