#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pcaseed::pipeline::covid_default_spec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

pub fn pcaseed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcaseed"))
        .args(args)
        .output()
        .expect("failed to launch pcaseed")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .unwrap();
    rdr.records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

pub const MERGE_SOURCES: [&str; 5] = ["cases", "testing", "events", "containment", "inform"];

pub fn merge_fixture_args(out: &Path) -> Vec<String> {
    let mut args = vec![
        "merge".to_owned(),
        "--spec".to_owned(),
        fixture("pipeline/spec.json").display().to_string(),
        "--out-dir".to_owned(),
        out.display().to_string(),
    ];
    for s in MERGE_SOURCES {
        args.push("--input".to_owned());
        args.push(fixture(&format!("pipeline/{s}.csv")).display().to_string());
    }
    args
}

/// (OWID-style name, name used by the policy trackers, name used by INFORM)
const COUNTRIES: &[(&str, &str, &str)] = &[
    ("Afghanistan", "Afghanistan", "Afghanistan"),
    ("Argentina", "Argentina", "Argentina"),
    ("Australia", "Australia", "Australia"),
    ("Austria", "Austria", "Austria"),
    ("Bangladesh", "Bangladesh", "Bangladesh"),
    ("Belgium", "Belgium", "Belgium"),
    ("Bolivia", "Bolivia", "Bolivia (Plurinational State of)"),
    ("Brazil", "Brazil", "Brazil"),
    ("Canada", "Canada", "Canada"),
    ("Chile", "Chile", "Chile"),
    ("China", "China", "China"),
    ("Colombia", "Colombia", "Colombia"),
    ("Cote d'Ivoire", "Cote d'Ivoire", "Côte d'Ivoire"),
    ("Czechia", "Czechia", "Czech Republic"),
    (
        "Democratic Republic of Congo",
        "Democratic Republic of Congo",
        "Congo, Democratic Republic of the",
    ),
    ("Denmark", "Denmark", "Denmark"),
    ("Egypt", "Egypt", "Egypt"),
    ("Ethiopia", "Ethiopia", "Ethiopia"),
    ("Finland", "Finland", "Finland"),
    ("France", "France", "France"),
    ("Germany", "Germany", "Germany"),
    ("Ghana", "Ghana", "Ghana"),
    ("Greece", "Greece", "Greece"),
    ("India", "India", "India"),
    ("Indonesia", "Indonesia", "Indonesia"),
    ("Iran", "Iran", "Iran (Islamic Republic of)"),
    ("Iraq", "Iraq", "Iraq"),
    ("Israel", "Israel", "Israel"),
    ("Italy", "Italy", "Italy"),
    ("Japan", "Japan", "Japan"),
    ("Kenya", "Kenya", "Kenya"),
    ("Laos", "Laos", "Lao People's Democratic Republic"),
    ("Malaysia", "Malaysia", "Malaysia"),
    ("Mexico", "Mexico", "Mexico"),
    ("Moldova", "Moldova", "Moldova, Republic of"),
    ("Morocco", "Morocco", "Morocco"),
    ("Mozambique", "Mozambique", "Mozambique"),
    ("Nepal", "Nepal", "Nepal"),
    ("Netherlands", "Netherlands", "Netherlands"),
    ("New Zealand", "New Zealand", "New Zealand"),
    ("Nigeria", "Nigeria", "Nigeria"),
    ("Norway", "Norway", "Norway"),
    ("Pakistan", "Pakistan", "Pakistan"),
    ("Peru", "Peru", "Peru"),
    ("Philippines", "Philippines", "Philippines"),
    ("Poland", "Poland", "Poland"),
    ("Portugal", "Portugal", "Portugal"),
    ("Russia", "Russia", "Russian Federation"),
    ("Saudi Arabia", "Saudi Arabia", "Saudi Arabia"),
    ("South Africa", "South Africa", "South Africa"),
    ("South Korea", "Korea, South", "Korea, Republic of"),
    ("Spain", "Spain", "Spain"),
    ("Sweden", "Sweden", "Sweden"),
    ("Syria", "Syria", "Syrian Arab Republic"),
    ("Tanzania", "Tanzania", "Tanzania, United Republic of"),
    ("Thailand", "Thailand", "Thailand"),
    ("Turkey", "Turkey", "Turkey"),
    ("Uganda", "Uganda", "Uganda"),
    (
        "United Kingdom",
        "United Kingdom",
        "United Kingdom of Great Britain and Northern Ireland",
    ),
    ("United States", "United States", "United States of America"),
    (
        "Venezuela",
        "Venezuela",
        "Venezuela (Bolivarian Republic of)",
    ),
    ("Vietnam", "Vietnam", "Viet Nam"),
    ("Yemen", "Yemen", "Yemen"),
    ("Zambia", "Zambia", "Zambia"),
];

/// Typical (low, high) range of each attribute; countries interpolate
/// between the ends by a latent development score plus noise.
fn attribute_range(name: &str) -> (f64, f64) {
    match name {
        "stringency_index" => (30.0, 85.0),
        "total_cases_per_million" => (50.0, 20000.0),
        "new_cases_per_million" => (0.1, 300.0),
        "total_deaths_per_million" => (1.0, 600.0),
        "new_deaths_per_million" => (0.0, 8.0),
        "cardiovasc_death_rate" => (400.0, 90.0),
        "hospital_beds_per_thousand" => (0.3, 13.0),
        "life_expectancy" => (53.0, 84.0),
        "handwashing_facilities" => (10.0, 100.0),
        "testing_policy" | "cancel_public_events" => (0.0, 3.0),
        "containment_index" => (30.0, 80.0),
        "PEOPLE_USING_AT_LEAST_BASIC_SANITATION_SERVICES" => (20.0, 100.0),
        "ACCESS_TO_HEALTHCARE" | "PHYSICIANS_DENSITY" => (8.0, 1.0),
        "CURRENT_HEALTH_EXPENDITURE_PER_CAPITA" => (30.0, 9000.0),
        "MATERNAL_MORTALITY_RATIO" => (1000.0, 3.0),
        "MORTALITY_RATE" => (90.0, 2.0),
        _ => (8.0, 1.0),
    }
}

fn value(rng: &mut ChaCha8Rng, name: &str, dev: f64) -> String {
    let (lo, hi) = attribute_range(name);
    let t = (dev + rng.random_range(-0.15..0.15)).clamp(0.0, 1.0);
    let v = lo + t * (hi - lo);
    if matches!(name, "testing_policy" | "cancel_public_events") {
        format!("{}", v.round())
    } else {
        format!("{v:.3}")
    }
}

fn write_rows(path: &Path, rows: Vec<Vec<String>>) {
    let mut w = csv::Writer::from_path(path).unwrap();
    for r in rows {
        w.write_record(&r).unwrap();
    }
    w.flush().unwrap();
}

/// Writes five CSVs with the column layout and file stems of the public
/// COVID-19 sources: several dated rows per country, spelling variants
/// across sources, aggregate rows, a few blanks. Returns the paths.
pub fn write_covid_like_sources(dir: &Path, seed: u64) -> Vec<PathBuf> {
    let spec = covid_default_spec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dev: Vec<f64> = COUNTRIES
        .iter()
        .map(|_| rng.random_range(0.0..1.0))
        .collect();
    let dates = ["2020-08-09", "2020-08-10", "2020-08-11"];
    let mut paths = Vec::new();
    for source in &spec.sources {
        let mut header = Vec::new();
        let mut rows = Vec::new();
        match source.id.as_str() {
            "owid-covid-data" => {
                header.extend(["iso_code", "continent", "location", "date"].map(String::from));
                header.extend(source.attributes.iter().cloned());
                header.push("population".into());
                let mut names: Vec<(&str, f64)> =
                    COUNTRIES.iter().zip(&dev).map(|(c, d)| (c.0, *d)).collect();
                names.push(("World", 0.5));
                names.push(("International", 0.5));
                for (name, d) in names {
                    for date in dates {
                        let mut row = vec!["XXX".into(), "".into(), name.into(), date.into()];
                        for a in &source.attributes {
                            row.push(if rng.random_bool(0.04) {
                                String::new()
                            } else {
                                value(&mut rng, a, d)
                            });
                        }
                        row.push(format!("{}", rng.random_range(1_000_000..300_000_000)));
                        rows.push(row);
                    }
                }
            }
            "inform-covid-indicators" => {
                header.extend(["COUNTRY", "ISO3"].map(String::from));
                header.extend(source.attributes.iter().cloned());
                header.push("INFORM_SOCIO_ECONOMIC_VULNERABILITY".into());
                for (c, d) in COUNTRIES.iter().zip(&dev) {
                    let mut row = vec![c.2.to_owned(), "XXX".into()];
                    for a in &source.attributes {
                        row.push(if rng.random_bool(0.03) {
                            "x".into()
                        } else {
                            value(&mut rng, a, *d)
                        });
                    }
                    row.push(value(&mut rng, "", *d));
                    rows.push(row);
                }
            }
            _ => {
                header.extend(["Entity", "Code", "Date"].map(String::from));
                header.extend(source.attributes.iter().cloned());
                for (c, d) in COUNTRIES.iter().zip(&dev) {
                    for date in ["Aug 10, 2020", "Aug 11, 2020"] {
                        let mut row = vec![c.1.to_owned(), "XXX".into(), date.into()];
                        for a in &source.attributes {
                            row.push(value(&mut rng, a, *d));
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let path = dir.join(format!("{}.csv", source.id));
        let mut all = vec![header];
        all.extend(rows);
        write_rows(&path, all);
        paths.push(path);
    }
    paths
}
