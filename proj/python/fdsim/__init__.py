"""Python bindings for the fdsim simulator core."""

from ._fdsim import (  # noqa: F401
    ConfigError,
    DegenerateChannelError,
    DomainError,
    ScenarioConfig,
    bsint_combiner,
    calibrate_activity,
    free_space_pathloss,
    load_config,
    los_probability,
    parse_config,
    pathloss_uma,
    percentile,
    preset,
    relative_gain,
    run_campaign,
    thermal_noise_w,
    zf_precoder,
)
