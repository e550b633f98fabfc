import pandas as pd
from pathlib import Path
from typing import Optional
from sqlalchemy import create_engine, inspect, select
from sqlalchemy.orm import sessionmaker
from sqlalchemy.exc import SQLAlchemyError
from survival_model.dataset import SurvivalDataset
from ..base_storage import BaseStorage, RUN_COLUMNS
from ..dataset_io import dataset_to_frame, frame_to_dataset
from ..documents import FitDocument, dumps_document, validate_document
from ..file_util import FileUtils
from .models import Base, FitRun, SelectedVariable
from logger_config import get_logger

logger = get_logger("storage")

DATASET_TABLE_PREFIX = "dataset_"


class SQLiteStorage(BaseStorage[FitRun]):
    """SQLAlchemy-based implementation of storage interface using SQLite."""

    def __init__(self, path: str = "./data", db_name: str = "strata_boost"):
        """
        Initialize SQLAlchemy engine and session for SQLite storage.

        Args:
            path: Directory path for the database file
            db_name: Name of the database file (without extension)
        """
        Path(path).mkdir(parents=True, exist_ok=True)
        db_file = FileUtils.database_file(path, db_name)

        self.engine = create_engine(f"sqlite:///{db_file}")
        self.Session = sessionmaker(bind=self.engine, expire_on_commit=False)

        Base.metadata.create_all(self.engine)
        logger.info(f"Initialized SQLite database at: {db_file}")

    def save_fit(self, name: str, document: FitDocument) -> FitRun:
        """
        Save or replace a fit under a name.

        The full document is kept as JSON; the selected coefficients also go
        to their own table so they can be queried.
        """
        payload = document.to_dict()
        validate_document(payload, "fit_document")
        with self.Session() as session:
            try:
                run = session.scalars(select(FitRun).where(FitRun.name == name)).first()
                if run is None:
                    run = FitRun(name=name)
                else:
                    run.touch()

                run.n = document.dataset["n"]
                run.p = document.dataset["p"]
                run.strata = document.dataset["strata"]
                run.events = document.dataset["events"]
                run.iterations = document.iterations
                run.rule = document.stopping_rule["rule"]
                run.rate = document.rate
                run.log_likelihood = document.log_likelihood
                run.document = dumps_document(payload)
                run.selected_variables = [
                    SelectedVariable(variable=variable, coefficient=coefficient)
                    for variable, coefficient in document.coefficients.items()
                ]

                session.add(run)
                session.commit()
                logger.info(f"Saved fit: {name} ({len(document.coefficients)} selected)")
                return run

            except SQLAlchemyError as e:
                session.rollback()
                logger.error(f"Error saving fit {name}: {e}")
                raise

    def get_fit(self, name: str) -> Optional[FitDocument]:
        with self.Session() as session:
            run = session.scalars(select(FitRun).where(FitRun.name == name)).first()
            return None if run is None else run.to_document()

    def list_fits(self) -> pd.DataFrame:
        with self.Session() as session:
            runs = session.scalars(select(FitRun).order_by(FitRun.created_at, FitRun.name)).all()
            rows = [
                {
                    "name": run.name,
                    "created_at": run.created_at,
                    "n": run.n,
                    "p": run.p,
                    "strata": run.strata,
                    "events": run.events,
                    "iterations": run.iterations,
                    "rule": run.rule,
                    "num_selected": len(run.selected_variables),
                }
                for run in runs
            ]
        return pd.DataFrame(rows, columns=RUN_COLUMNS)

    def selected_variables(self) -> pd.DataFrame:
        """Every stored nonzero coefficient, joined with the name of its fit."""
        query = (
            "SELECT fit_runs.name AS name, selected_variables.variable AS variable, "
            "selected_variables.coefficient AS coefficient "
            "FROM selected_variables JOIN fit_runs ON fit_runs.id = selected_variables.fit_run_id "
            "ORDER BY fit_runs.name, selected_variables.id"
        )
        return pd.read_sql(query, con=self.engine)

    def save_dataset(self, name: str, dataset: SurvivalDataset) -> None:
        """Store a dataset as its own table, replacing any earlier one of the same name."""
        table_name = DATASET_TABLE_PREFIX + FileUtils.sanitize_name(name)
        try:
            dataset_to_frame(dataset).to_sql(table_name, con=self.engine, if_exists="replace", index=False)
        except SQLAlchemyError as e:
            logger.error(f"Error saving dataset {name}: {e}")
            raise
        logger.info(f"Saved dataset: {name} as table {table_name}")

    def get_dataset(self, name: str) -> Optional[SurvivalDataset]:
        table_name = DATASET_TABLE_PREFIX + FileUtils.sanitize_name(name)
        if table_name not in inspect(self.engine).get_table_names():
            return None
        frame = pd.read_sql_table(table_name, con=self.engine)
        return frame_to_dataset(frame, stratum_column="stratum")

    def __del__(self):
        """Cleanup SQLAlchemy engine when object is destroyed."""
        if hasattr(self, 'engine'):
            self.engine.dispose()
