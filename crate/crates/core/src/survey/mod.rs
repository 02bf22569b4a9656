//! Analysis of recorded dialogue surveys: graphs built from participant
//! answers, postulate adherence, cross-tabulations and belief change.

mod analysis;
mod model;
mod parse;
mod report;

pub use analysis::{
    adherence_rates, belief_change_summary, common_graphs, core_sample, participant_belief_change,
    relation_crosstab, relation_frequencies, BeliefChangeSummary, Crosstab, Direction, Pooling,
    RelationFrequency,
};
pub use model::{
    likert_to_belief, AgreementLevel, DialogueSpec, RelationAnswer, ResponseRecord, Statement,
    AUXILIARY,
};
pub use parse::{parse_dialogue, parse_responses};
pub use report::{
    build_report, report_to_json, report_to_text, AdherenceRow, BeliefChangeReport, CrosstabGroup,
    CrosstabReport, DialogueReport, DistanceSummary, FrequencyRow, GraphSummary, ReportOptions,
    StepReport, SurveyReport,
};
