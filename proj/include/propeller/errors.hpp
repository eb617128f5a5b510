#pragma once

#include <stdexcept>
#include <string>

namespace propeller {

struct GeomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAnEllipse : GeomError { using GeomError::GeomError; };
struct DegenerateTriangle : GeomError { using GeomError::GeomError; };
struct PointAtInfinity : GeomError { using GeomError::GeomError; };
struct PointInsideConic : GeomError { using GeomError::GeomError; };
struct SingularMap : GeomError { using GeomError::GeomError; };
struct NonCentralMap : GeomError { using GeomError::GeomError; };
struct InvalidAxes : GeomError { using GeomError::GeomError; };
struct NoRealCaustic : GeomError { using GeomError::GeomError; };
struct ClosureFailure : GeomError { using GeomError::GeomError; };
struct TangentFailure : GeomError { using GeomError::GeomError; };
struct RankDeficient : GeomError { using GeomError::GeomError; };

}  // namespace propeller
