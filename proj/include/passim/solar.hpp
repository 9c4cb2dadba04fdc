#pragma once

#include "passim/time.hpp"

namespace passim {

/// Geographic location of the simulated site.
struct SiteInfo {
    double latitude = -18.9;    ///< degrees, +north
    double longitude = 47.5;    ///< degrees, +east
    double utc_offset = 3.0;    ///< hours
    double ground_albedo = 0.2;

    bool operator==(const SiteInfo&) const = default;
};

/// Throws InputError if a SiteInfo field is out of range.
void check_site(const SiteInfo& site);

struct SolarPosition {
    double altitude = 0.0;  ///< degrees above horizon, negative at night
    double azimuth = 0.0;   ///< degrees clockwise from north, [0, 360)
};

/// Sun position at `timestamp` + `minutes` local civil time.
///
/// Declination and equation of time come from Spencer's Fourier series, the
/// hour angle from apparent solar time (longitude and equation-of-time
/// corrected), altitude and azimuth from the usual spherical relations.
SolarPosition solar_position(const SiteInfo& site, const LocalDateTime& timestamp,
                             double minutes = 0.0);

/// Extraterrestrial normal irradiance (W/m2) for a day of year.
double extraterrestrial_normal(int day_of_year);

/// Cosine of the angle between the sun vector and a surface normal.
/// `tilt` is measured from the zenith, `surface_azimuth` clockwise from north.
double incidence_cosine(const SolarPosition& pos, double tilt, double surface_azimuth);

struct SurfaceIrradiance {
    double beam = 0.0;
    double sky_diffuse = 0.0;
    double ground_reflected = 0.0;
    double total = 0.0;
};

/// Sun altitude (degrees) at or below which the beam component is dropped.
inline constexpr double kLowSunAltitude = 2.0;

/// Isotropic-sky irradiance on a tilted plane from horizontal global/diffuse.
///
/// Direct normal is reconstructed as (GHI - DHI) / sin(altitude); for sun
/// altitudes at or below kLowSunAltitude the beam term is zero.
SurfaceIrradiance tilt_irradiance(double global_horizontal, double diffuse_horizontal,
                                  const SolarPosition& pos, double tilt,
                                  double surface_azimuth, double albedo);

}  // namespace passim
