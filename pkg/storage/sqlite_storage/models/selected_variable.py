from sqlalchemy import Column, Float, ForeignKey, Integer, String
from sqlalchemy.orm import relationship
from .base import Base


class SelectedVariable(Base):
    """SQLAlchemy model for one nonzero coefficient of a stored fit."""
    __tablename__ = 'selected_variables'

    id = Column(Integer, primary_key=True, autoincrement=True)
    fit_run_id = Column(Integer, ForeignKey('fit_runs.id'), nullable=False)
    variable = Column(String, nullable=False)
    coefficient = Column(Float, nullable=False)

    # Relationship to the fit
    fit_run = relationship("FitRun", back_populates="selected_variables")

    def __repr__(self):
        return f"<SelectedVariable(variable='{self.variable}', coefficient={self.coefficient})>"
