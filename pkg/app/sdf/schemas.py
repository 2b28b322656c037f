from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from sdf.models import ActorKind, PortRef


class TransitionRow(BaseModel):
    """One reachable transition of a stateful actor."""
    state: List[Optional[bool]] = Field(..., description="Pre-state, null for unknown")
    inputs: List[bool] = Field(..., description="Input valuation in port order")
    outputs: List[str] = Field(..., description="Produced port values: 0, 1 or –")
    next: List[Optional[bool]] = Field(..., description="Successor state")


class MealySchema(BaseModel):
    """Transition table enumerated over reachable states only."""
    vars: List[str] = Field(..., description="State variable names")
    init: List[Optional[bool]] = Field(..., description="Initial state")
    transitions: List[TransitionRow] = Field(default_factory=list, description="Reachable transitions")


class ActorSchema(BaseModel):
    id: str = Field(..., min_length=1, description="Unique actor id")
    kind: str = Field(..., description="Actor kind")
    provenance: List[str] = Field(default_factory=list, description="Labels of the conjuncts this actor realizes")
    inputs: List[str] = Field(default_factory=list, description="Input port names")
    outputs: List[str] = Field(default_factory=list, description="Output port names")
    params: Dict[str, Any] = Field(default_factory=dict, description="Behavior parameters, A for resolution actors")
    mealy: Optional[MealySchema] = Field(None, description="Explicit machine for stateful actors")

    @field_validator('kind')
    @classmethod
    def validate_kind(cls, value: str) -> str:
        """Validate that kind names a known actor kind."""
        kinds = [k.value for k in ActorKind]
        if value not in kinds:
            raise ValueError(f"Kind must be one of {kinds}")
        return value


class WireSchema(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: str = Field(..., alias='from', description="actor.port or $external")
    dest: str = Field(..., alias='to', description="actor.port or $external")

    @field_validator('source', 'dest')
    @classmethod
    def validate_ref(cls, value: str) -> str:
        """Validate the port reference syntax."""
        PortRef.parse(value)
        return value


class NetlistSchema(BaseModel):
    """Serialized actor system."""
    inputs: List[str] = Field(..., description="External input ports")
    outputs: List[str] = Field(..., description="External output ports")
    actors: List[ActorSchema] = Field(default_factory=list, description="Actors in creation order")
    wires: List[WireSchema] = Field(default_factory=list, description="Wires")
    meta: Dict[str, str] = Field(default_factory=dict, description="Build notes")
