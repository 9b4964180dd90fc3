use super::merge::{MergeSpec, SourceSpec};

fn source(id: &str, key: &str, date: Option<&str>, attributes: &[&str]) -> SourceSpec {
    SourceSpec {
        id: id.to_owned(),
        key: key.to_owned(),
        date: date.map(str::to_owned),
        attributes: attributes.iter().map(|a| (*a).to_owned()).collect(),
    }
}

/// Default mapping of the five public COVID-19 sources onto 25 health-care
/// attributes. Source ids match the usual download file stems; column names
/// follow the Our World in Data exports and the INFORM COVID-19 indicator
/// sheet. Override with a JSON spec when the files differ.
pub fn covid_default_spec() -> MergeSpec {
    MergeSpec {
        key_name: "country".to_owned(),
        sources: vec![
            source(
                "owid-covid-data",
                "location",
                Some("date"),
                &[
                    "stringency_index",
                    "total_cases_per_million",
                    "new_cases_per_million",
                    "total_deaths_per_million",
                    "new_deaths_per_million",
                    "cardiovasc_death_rate",
                    "hospital_beds_per_thousand",
                    "life_expectancy",
                    "handwashing_facilities",
                ],
            ),
            source(
                "covid-19-testing-policy",
                "Entity",
                Some("Date"),
                &["testing_policy"],
            ),
            source(
                "public-events-covid",
                "Entity",
                Some("Date"),
                &["cancel_public_events"],
            ),
            source(
                "covid-containment-and-health-index",
                "Entity",
                Some("Date"),
                &["containment_index"],
            ),
            source(
                "inform-covid-indicators",
                "COUNTRY",
                None,
                &[
                    "INFORM_COVID_RISK",
                    "HAZARD_EXPOSURE_DIMENSION",
                    "PEOPLE_USING_AT_LEAST_BASIC_SANITATION_SERVICES",
                    "INFORM_VULNERABILITY",
                    "INFORM_HEALTH_CONDITIONS",
                    "INFORM_EPIDEMIC_VULNERABILITY",
                    "MORTALITY_RATE",
                    "PREVALENCE_OF_UNDERNOURISHMENT",
                    "LACK_OF_COPING_CAPACITY",
                    "ACCESS_TO_HEALTHCARE",
                    "PHYSICIANS_DENSITY",
                    "CURRENT_HEALTH_EXPENDITURE_PER_CAPITA",
                    "MATERNAL_MORTALITY_RATIO",
                ],
            ),
        ],
        max_missing_fraction: 0.4,
    }
}
