import json
from sqlalchemy import Column, Float, Integer, String, Text
from sqlalchemy.orm import relationship
from .run_mixin import RunTimestampMixin
from .base import Base
from ...documents import FitDocument


class FitRun(Base, RunTimestampMixin):
    """SQLAlchemy model for a stored boosting fit."""
    __tablename__ = 'fit_runs'

    id = Column(Integer, primary_key=True, autoincrement=True)
    name = Column(String, unique=True, nullable=False)
    n = Column(Integer, nullable=False)
    p = Column(Integer, nullable=False)
    strata = Column(Integer, nullable=False)
    events = Column(Integer, nullable=False)
    iterations = Column(Integer, nullable=False)
    rule = Column(String, nullable=False)
    rate = Column(Float, nullable=False)
    log_likelihood = Column(Float, nullable=False)
    document = Column(Text, nullable=False)  # full fit document as JSON

    # Relationships
    selected_variables = relationship("SelectedVariable", back_populates="fit_run",
                                      cascade="all, delete-orphan")

    def to_document(self) -> FitDocument:
        return FitDocument.from_dict(json.loads(self.document))

    def __repr__(self):
        return f"<FitRun(name='{self.name}', rule='{self.rule}', iterations={self.iterations})>"
