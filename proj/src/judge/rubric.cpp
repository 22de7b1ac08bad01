#include "selfsense/judge/rubric.hpp"

namespace selfsense::judge {

const char* to_string(Dimension d) {
  switch (d) {
    case Dimension::Entity: return "entity";
    case Dimension::Dimensions: return "dimensions";
    case Dimension::Movement: return "movement";
    case Dimension::Environment: return "environment";
  }
  return "entity";
}

const Rubric& RubricSet::for_dimension(Dimension d) const {
  switch (d) {
    case Dimension::Entity: return entity;
    case Dimension::Dimensions: return dimensions;
    case Dimension::Movement: return movement;
    case Dimension::Environment: return environment;
  }
  return entity;
}

RubricSet default_rubrics(const GroundTruth& truth) {
  RubricSet set;

  set.entity.dimension = Dimension::Entity;
  set.entity.truth = truth;
  set.entity.levels = {
      "Completely erroneous or misconceived: a static installation, a human or an "
      "animal, or any other non-machine entity.",
      "Wrong machine category whose locomotion class contradicts a wheeled ground "
      "platform, such as an aerial drone or an aircraft.",
      "Vague or generic description of a device without committing to a "
      "recognizable category.",
      "A robot or ground vehicle: machine-like and plausible, but not established "
      "as a mobile indoor wheeled platform.",
      "A mobile wheeled ground robot consistent with the true platform, lacking "
      "only the exact platform identification.",
      "Outstanding: exact platform identification, naming the specific "
      "omnidirectional wheeled robot model.",
  };

  set.dimensions.dimension = Dimension::Dimensions;
  set.dimensions.truth = truth;
  set.dimensions.levels = {
      "Completely erroneous: mean relative error above 150%, an implausible scale "
      "for any indoor platform.",
      "Order-of-magnitude level error: mean relative error in (80%, 150%].",
      "Large error: mean relative error in (50%, 80%].",
      "Plausible for a mobile robot: mean relative error in (20%, 50%].",
      "Close to the true dimensions: mean relative error in (5%, 20%].",
      "Outstanding: matches the true dimensions within a 5% mean relative error.",
  };

  set.movement.dimension = Dimension::Movement;
  set.movement.truth = truth;
  set.movement.levels = {
      "Completely erroneous: reports no movement at all or a static mounting "
      "despite continuous self-motion.",
      "Wrong locomotion class: flying, walking, swimming or any mode inconsistent "
      "with wheeled ground travel.",
      "Unspecific motion description without a recognizable locomotion mode.",
      "Ground-based planar motion (sliding or gliding) without identifying wheels.",
      "Wheeled rolling motion consistent with the platform, without the "
      "omnidirectional capability.",
      "Outstanding: omnidirectional wheeled motion including lateral translation.",
  };

  set.environment.dimension = Dimension::Environment;
  set.environment.truth = truth;
  set.environment.levels = {
      "No environmental description (e.g. reports no visual information) or one "
      "that contradicts an indoor scene.",
      "Misconceived: an outdoor or open-sky scene.",
      "Vague surroundings without committing to an indoor structure.",
      "Indoor or enclosed space, with little structural detail.",
      "Structured indoor space with walls and obstacles correctly described.",
      "Outstanding: structured indoor space with walls and obstacles plus a "
      "plausible scene-class inference (e.g. storage facility, warehouse or gym).",
  };

  return set;
}

}  // namespace selfsense::judge
