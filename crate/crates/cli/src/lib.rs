//! Front-end for `suction-core`: config files, report rendering and layout
//! drawings. The `suction` binary is a thin dispatcher over [`commands`].

pub mod commands;
pub mod config;
pub mod report;
pub mod svg;
mod table;

pub use config::{emit_scenario, parse_config, Config, ConfigDocument, ConfigError};
pub use report::{
    emit_batch, emit_report, parse_structured_batch, parse_structured_report, Format,
};
pub use svg::emit_layout_svg;
